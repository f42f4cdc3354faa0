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

#include "ofc/corpus.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ofc/errors.h"

namespace ofc {

namespace {

constexpr double kTimeTolerance = 1e-9;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, int line, const char* what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw InputError("line " + std::to_string(line) + ": invalid " + what + " '" + s + "'");
  }
  return v;
}

long parse_long(const std::string& s, int line, const char* what) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("line " + std::to_string(line) + ": invalid " + what + " '" + s + "'");
  }
  return v;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string direction_name(Direction d) { return d == Direction::kRight ? "right" : "left"; }

Direction parse_direction(const std::string& s) {
  if (s == "right") return Direction::kRight;
  if (s == "left") return Direction::kLeft;
  throw InputError("direction must be 'left' or 'right', got '" + s + "'");
}

Corpus read_corpus(std::istream& in, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InputError("position scale must be positive");
  Corpus corpus;
  std::string raw;
  int line = 0;
  bool header = false;
  int cols[4] = {-1, -1, -1, -1};
  const char* names[4] = {"trial_id", "frame", "time_s", "pos_m"};
  std::size_t width = 0;

  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s[0] == '#') {
      if (header) continue;
      const std::string body = trim(s.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = trim(body.substr(0, eq));
      const std::string value = trim(body.substr(eq + 1));
      ConditionMeta& m = corpus.meta;
      if (key == "participant") m.participant = value;
      else if (key == "condition") m.condition = value;
      else if (key == "direction") m.direction = parse_direction(value);
      else if (key == "origin_m") m.origin = parse_double(value, line, "origin_m") * scale;
      else if (key == "target_m") m.target = parse_double(value, line, "target_m") * scale;
      else if (key == "width_m") m.width = parse_double(value, line, "width_m") * scale;
      else if (key == "h_s") m.h = parse_double(value, line, "h_s");
      continue;
    }
    const auto cells = split(s);
    if (!header) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        for (int c = 0; c < 4; ++c) {
          if (cells[i] == names[c]) cols[c] = static_cast<int>(i);
        }
      }
      for (int c = 0; c < 4; ++c) {
        if (cols[c] < 0) {
          throw InputError("line " + std::to_string(line) + ": missing column '" + names[c] + "'");
        }
      }
      width = cells.size();
      header = true;
      continue;
    }
    if (cells.size() != width) {
      throw InputError("line " + std::to_string(line) + ": expected " + std::to_string(width) +
                       " fields, got " + std::to_string(cells.size()));
    }
    const std::string& id = cells[cols[0]];
    if (id.empty()) throw InputError("line " + std::to_string(line) + ": empty trial_id");
    const long frame = parse_long(cells[cols[1]], line, "frame");
    const double t = parse_double(cells[cols[2]], line, "time_s");
    const double p = parse_double(cells[cols[3]], line, "pos_m") * scale;

    if (corpus.trials.empty() || corpus.trials.back().id != id) {
      for (const auto& tr : corpus.trials) {
        if (tr.id == id) {
          throw InputError("line " + std::to_string(line) + ": rows of trial '" + id +
                           "' are not contiguous");
        }
      }
      corpus.trials.push_back(RawTrial{id, {}, {}, false});
    }
    RawTrial& trial = corpus.trials.back();
    if (frame != static_cast<long>(trial.size())) {
      throw InputError("line " + std::to_string(line) + ": trial '" + id + "' expected frame " +
                       std::to_string(trial.size()) + ", got " + std::to_string(frame));
    }
    if (!trial.time.empty()) {
      const double dt = t - trial.time.back();
      if (!(dt > 0.0)) {
        throw InputError("line " + std::to_string(line) + ": timestamp " + cells[cols[2]] +
                         " is not strictly increasing in trial '" + id + "'");
      }
      if (std::abs(dt - corpus.meta.h) > kTimeTolerance) {
        throw InputError("line " + std::to_string(line) + ": non-uniform sampling in trial '" +
                         id + "' (step " + format_double(dt) + " s, expected " +
                         format_double(corpus.meta.h) + " s)");
      }
    }
    trial.time.push_back(t);
    trial.position.push_back(p);
  }
  if (!header) throw InputError("corpus is empty or has no header");
  if (corpus.trials.empty()) throw InputError("corpus has no rows");
  return corpus;
}

Corpus load_corpus(const std::string& path, double scale) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus '" + path + "'");
  try {
    return read_corpus(in, scale);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  const ConditionMeta& m = corpus.meta;
  if (!m.participant.empty()) out << "# participant=" << m.participant << '\n';
  if (!m.condition.empty()) out << "# condition=" << m.condition << '\n';
  out << "# direction=" << direction_name(m.direction) << '\n';
  if (m.origin) out << "# origin_m=" << format_double(*m.origin) << '\n';
  if (m.target) out << "# target_m=" << format_double(*m.target) << '\n';
  if (m.width) out << "# width_m=" << format_double(*m.width) << '\n';
  out << "# h_s=" << format_double(m.h) << '\n';
  out << "trial_id,frame,time_s,pos_m\n";
  for (const auto& t : corpus.trials) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      out << t.id << ',' << i << ',' << format_double(t.time[i]) << ','
          << format_double(t.position[i]) << '\n';
    }
  }
}

void save_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write corpus '" + path + "'");
  write_corpus(out, corpus);
  if (!out) throw InputError("failed writing corpus '" + path + "'");
}

}  // namespace ofc
