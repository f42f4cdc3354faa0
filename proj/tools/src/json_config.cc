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

#include "json_config.h"

#include <nlohmann/json.hpp>

namespace ofcpoint {
namespace {

using nlohmann::json;

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw CLI::ConversionError("config values must be strings, numbers or booleans, got " + v.dump());
}

std::string option_name(std::string key) {
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  return key;
}

void collect(const json& obj, std::vector<std::string> parents,
             std::vector<CLI::ConfigItem>& out) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      // Sections are named after subcommands and are absolute.
      collect(value, {key}, out);
      continue;
    }
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = option_name(key);
    if (value.is_array()) {
      for (const auto& v : value) item.inputs.push_back(scalar(v));
    } else if (!value.is_null()) {
      item.inputs.push_back(scalar(value));
    } else {
      continue;
    }
    out.push_back(std::move(item));
  }
}

}  // namespace

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  json j;
  try {
    j = json::parse(input);
  } catch (const json::exception& e) {
    throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
  std::vector<CLI::ConfigItem> items;
  collect(j, scope_ ? scope_() : std::vector<std::string>{}, items);
  return items;
}

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool,
                                  std::string) const {
  json j = json::object();
  for (const CLI::Option* opt : app->get_options({})) {
    if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
    const std::string name = opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (res.size() == 1) {
        j[name] = res.front();
      } else {
        j[name] = res;
      }
    } else if (default_also && !opt->get_default_str().empty()) {
      j[name] = opt->get_default_str();
    }
  }
  return j.dump(2) + "\n";
}

}  // namespace ofcpoint
