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

#ifndef OFC_CORPUS_H_
#define OFC_CORPUS_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ofc {

enum class Direction { kRight, kLeft };

std::string direction_name(Direction d);
Direction parse_direction(const std::string& s);

// Condition metadata for one (participant, task, direction) file.
struct ConditionMeta {
  std::string participant;
  std::string condition;
  Direction direction = Direction::kRight;
  std::optional<double> origin;
  std::optional<double> target;
  std::optional<double> width;
  double h = 0.002;
};

struct RawTrial {
  std::string id;
  std::vector<double> time;      // seconds
  std::vector<double> position;  // meters
  bool discarded = false;

  std::size_t size() const { return position.size(); }
};

struct Corpus {
  ConditionMeta meta;
  std::vector<RawTrial> trials;
};

// CSV with header `trial_id,frame,time_s,pos_m`, optionally preceded by
// `# key=value` metadata lines (participant, condition, direction, origin_m,
// target_m, width_m, h_s). Rows of one trial are contiguous. `scale`
// multiplies positions, e.g. 1 / pixels-per-meter.
// Throws InputError with the offending line number.
Corpus read_corpus(std::istream& in, double scale = 1.0);
Corpus load_corpus(const std::string& path, double scale = 1.0);

void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::string& path, const Corpus& corpus);

}  // namespace ofc

#endif  // OFC_CORPUS_H_
