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

#ifndef OFCPOINT_JSON_CONFIG_H_
#define OFCPOINT_JSON_CONFIG_H_

#include <functional>
#include <istream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace ofcpoint {

// Reads JSON objects whose keys are long option names (dashes or
// underscores). Arrays become repeated values; nested objects address
// subcommands. Top-level keys go to the subcommands returned by `scope`.
class JsonConfig : public CLI::Config {
 public:
  using Scope = std::function<std::vector<std::string>()>;
  explicit JsonConfig(Scope scope = {}) : scope_(std::move(scope)) {}

  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

 private:
  Scope scope_;
};

}  // namespace ofcpoint

#endif  // OFCPOINT_JSON_CONFIG_H_
