// Copyright 2026 The ofc-pointing Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OFC_SAVITZKY_GOLAY_H_
#define OFC_SAVITZKY_GOLAY_H_

#include <span>
#include <vector>

namespace ofc {

// Local polynomial least-squares smoothing/differentiation. Each output is the
// `deriv`-th derivative of the degree-`order` fit over `window` samples,
// centered where possible and shifted inward at the edges.
std::vector<double> savitzky_golay(std::span<const double> y, int window, int order, int deriv,
                                   double h);

// Second derivative with a cubic fit over 15 frames.
std::vector<double> reference_acceleration(std::span<const double> position, double h);

}  // namespace ofc

#endif  // OFC_SAVITZKY_GOLAY_H_
