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

#ifndef OFCPOINT_FORMAT_H_
#define OFCPOINT_FORMAT_H_

#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ofc/errors.h"

namespace ofcpoint {

class IoError : public ofc::Error {
 public:
  explicit IoError(const std::string& what) : ofc::Error("io", what) {}
};

// Shortest decimal that round-trips; independent of the global locale.
std::string fmt(double v);
std::string fmt(long v);
inline std::string fmt(int v) { return fmt(static_cast<long>(v)); }
inline std::string fmt(std::size_t v) { return fmt(static_cast<long>(v)); }
// Empty cell when absent.
std::string fmt(const std::optional<double>& v);

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

// Throws IoError when the file cannot be written.
void write_file(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

// Creates the directory (and parents) if missing.
void ensure_directory(const std::string& path);

std::string join_path(const std::string& dir, const std::string& file);

}  // namespace ofcpoint

#endif  // OFCPOINT_FORMAT_H_
