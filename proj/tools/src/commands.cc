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

#include "commands.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "format.h"
#include "ofc/corpus.h"
#include "ofc/errors.h"
#include "ofc/second_order_lag.h"
#include "ofc/synthesize.h"
#include "plots.h"
#include "serialize.h"

namespace ofcpoint {

ofc::TaskSpec TaskOptions::spec() const {
  ofc::TaskSpec t = ofc::TaskSpec::rest_to_rest(origin, target, width, n, h);
  t.validate();
  return t;
}

namespace {

double parse_number(const std::string& text, const std::string& field) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  while (b < e && *b == ' ') ++b;
  while (e > b && e[-1] == ' ') --e;
  if (b < e && *b == '+') ++b;
  auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e) {
    throw ofc::ParameterError(field, "'" + text + "' is not a number");
  }
  return v;
}

}  // namespace

std::string canonical_parameter(const std::string& name) {
  std::string s = name;
  for (char& c : s) {
    if (c == '-') c = '_';
  }
  if (s == "nmj") return "n_mj";
  if (s == "ns") return "n_s";
  return s;
}

ofc::ParameterMap ParameterFlags::collect() const {
  ofc::ParameterMap m;
  auto put = [&](const char* name, const std::optional<double>& v) {
    if (v) m[name] = *v;
  };
  put("k", k);
  put("d", d);
  put("n_mj", n_mj);
  put("omega_r", omega_r);
  put("omega_v", omega_v);
  put("omega_f", omega_f);
  put("sigma_u", sigma_u);
  put("sigma_s", sigma_s);
  put("sigma_v", sigma_v);
  put("sigma_f", sigma_f);
  put("sigma_e", sigma_e);
  put("gamma", gamma);
  put("n_s", n_s);
  std::optional<double> z = zeta;
  for (const std::string& kv : extra) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ofc::ParameterError("param", "expected name=value, got '" + kv + "'");
    }
    const std::string name = canonical_parameter(kv.substr(0, eq));
    const double v = parse_number(kv.substr(eq + 1), name);
    if (name == "zeta") {
      z = v;
    } else {
      m[name] = v;
    }
  }
  if (z) {
    if (m.count("d")) throw ofc::ParameterError("zeta", "give either d or zeta, not both");
    if (!m.count("k")) throw ofc::ParameterError("zeta", "requires k");
    if (!(m["k"] > 0.0)) throw ofc::ParameterError("k", "must be positive");
    m["d"] = ofc::TwoOLParams::from_zeta(m["k"], *z).d;
  }
  return m;
}

ofc::ParameterMap resolve_parameters(ofc::ModelKind kind, const ParameterFlags& flags) {
  ofc::ParameterMap m = flags.collect();
  ofc::check_parameters(kind, m);
  return m;
}

ofc::ModelOptions MuscleOptions::model_options() const {
  ofc::ModelOptions o;
  o.muscle = {tau1, tau2, mass};
  o.muscle.validate();
  if (solver_iterations < 1) throw ofc::ParameterError("solver-iterations", "must be at least 1");
  if (!(solver_tolerance >= 0.0)) throw ofc::ParameterError("solver-tolerance", "must be >= 0");
  o.solver = {solver_iterations, solver_tolerance};
  return o;
}

double DataOptions::scale() const {
  if (px_per_m == 0.0) return 1.0;
  if (!(px_per_m > 0.0) || !std::isfinite(px_per_m)) {
    throw ofc::ParameterError("px-per-m", "must be positive");
  }
  return 1.0 / px_per_m;
}

ofc::PreprocessOptions DataOptions::preprocess() const {
  return {strip_reaction_time, remove_outliers};
}

bool wants(const std::vector<std::string>& formats, const std::string& f) {
  for (const auto& x : formats) {
    if (x != "csv" && x != "json" && x != "svg") {
      throw ofc::ParameterError("format", "unknown format '" + x + "' (expected csv, json or svg)");
    }
  }
  for (const auto& x : formats) {
    if (x == f) return true;
  }
  return false;
}

// ---- simulate

namespace {

json summary_json(const RunSummary& s, const ofc::TaskSpec& task) {
  json j{{"peak_velocity", s.peak_velocity},
         {"terminal_std", s.terminal_std},
         {"final_position", s.final_position},
         {"overshoot", s.overshoot}};
  if (s.time_to_target) {
    j["time_to_target_step"] = *s.time_to_target;
    j["time_to_target_s"] = *s.time_to_target * task.h;
  } else {
    j["time_to_target_step"] = nullptr;
    j["time_to_target_s"] = nullptr;
  }
  return j;
}

}  // namespace

SimulateResult cmd_simulate(const SimulateOptions& o) {
  const ofc::ModelKind kind = ofc::parse_model(o.model);
  const ofc::ParameterMap params = resolve_parameters(kind, o.params);
  const ofc::TaskSpec task = o.task.spec();
  const ofc::ModelOptions mopts = o.muscle.model_options();
  if (o.samples < 0) throw ofc::ParameterError("samples", "must be >= 0");
  const bool csv = wants(o.formats, "csv");
  const bool js = wants(o.formats, "json");
  const bool svg = wants(o.formats, "svg");

  const ofc::ModelRun run = ofc::run_model(kind, params, task, mopts);
  SimulateResult res;
  res.summary = summarize(run, task);

  ensure_directory(o.out_dir);
  const std::string prefix = o.prefix.empty() ? std::string(ofc::model_name(kind)) : o.prefix;
  auto out = [&](const std::string& suffix) { return join_path(o.out_dir, prefix + suffix); };

  if (csv) {
    std::ostringstream ss;
    write_trajectory_csv(ss, run, task);
    write_file(out("_trajectory.csv"), ss.str());
    res.files.push_back(out("_trajectory.csv"));
  }
  if (js) {
    json j{{"model", std::string(ofc::model_name(kind))},
           {"params", to_json(params)},
           {"task", to_json(task)},
           {"seed", o.seed},
           {"summary", summary_json(res.summary, task)}};
    if (run.law) {
      j["solver"] = {{"converged", run.law->converged},
                     {"iterations", run.law->iterations},
                     {"cost", run.law->cost},
                     {"cost_history", run.law->cost_history}};
    }
    write_file(out("_run.json"), dump(j));
    res.files.push_back(out("_run.json"));
    if (run.moments) {
      write_file(out("_distribution.json"), dump(distribution_json(run, task)));
      res.files.push_back(out("_distribution.json"));
    }
  }
  if (svg) {
    write_file(out(".svg"), render_svg(run_panels(run, task, prefix)));
    res.files.push_back(out(".svg"));
  }
  if (o.samples > 0) {
    ofc::SynthesizeOptions so;
    so.condition = prefix;
    so.model = mopts;
    const ofc::Corpus c = ofc::synthesize_corpus(kind, params, task, o.samples, o.seed, so);
    std::ostringstream ss;
    ofc::write_corpus(ss, c);
    write_file(out("_samples.csv"), ss.str());
    res.files.push_back(out("_samples.csv"));
  }
  return res;
}

// ---- synthesize

std::string cmd_synthesize(const SynthesizeCmdOptions& o) {
  const ofc::ModelKind kind = ofc::parse_model(o.model);
  const ofc::ParameterMap params = resolve_parameters(kind, o.params);
  const ofc::TaskSpec task = o.task.spec();
  if (o.out.empty()) throw ofc::ParameterError("out", "output path required");
  ofc::SynthesizeOptions so;
  so.jitter = o.jitter;
  so.participant = o.participant;
  so.condition = o.condition.empty() ? std::string(ofc::model_name(kind)) : o.condition;
  so.model = o.muscle.model_options();
  const ofc::Corpus c = ofc::synthesize_corpus(kind, params, task, o.trials, o.seed, so);
  const auto parent = std::filesystem::path(o.out).parent_path().string();
  ensure_directory(parent);
  std::ostringstream ss;
  ofc::write_corpus(ss, c);
  write_file(o.out, ss.str());
  return o.out;
}

// ---- preprocess

std::vector<std::string> cmd_preprocess(const PreprocessCmdOptions& o) {
  if (o.corpora.empty()) throw ofc::InputError("no corpus given");
  const bool js = wants(o.formats, "json");
  const bool svg = wants(o.formats, "svg");
  const bool csv = wants(o.formats, "csv");
  ensure_directory(o.out_dir);
  std::vector<std::string> files;
  std::ostringstream report;
  write_csv_row(report, {"corpus", "participant", "condition", "direction", "input_trials",
                         "no_onset", "positional_outliers", "duration_outliers", "kept", "frames",
                         "outlier_stage_skipped"});
  for (const std::string& path : o.corpora) {
    const ofc::Corpus corpus = ofc::load_corpus(path, o.data.scale());
    const ofc::PreprocessReport rep = ofc::preprocess(corpus, o.data.preprocess());
    const std::string stem = std::filesystem::path(path).stem().string();
    write_csv_row(report, {path, corpus.meta.participant, corpus.meta.condition,
                           ofc::direction_name(corpus.meta.direction), fmt(rep.input_trials),
                           fmt(rep.no_onset.size()), fmt(rep.positional.size()),
                           fmt(rep.duration.size()), fmt(rep.ensemble.trials.size()),
                           fmt(rep.ensemble.frames()), rep.outlier_stage_skipped ? "1" : "0"});
    if (js) {
      const std::string f = join_path(o.out_dir, stem + "_ensemble.json");
      write_file(f, dump(ensemble_json(rep.ensemble)));
      files.push_back(f);
    }
    if (svg) {
      const std::string f = join_path(o.out_dir, stem + "_ensemble.svg");
      write_file(f, render_svg(ensemble_panels(rep.ensemble, stem)));
      files.push_back(f);
    }
  }
  if (csv) {
    const std::string f = join_path(o.out_dir, "preprocess_report.csv");
    write_file(f, report.str());
    files.push_back(f);
  }
  return files;
}

// ---- sweep

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> g;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw ofc::ParameterError("grid", "range must be lo:hi:count");
    const double lo = parse_number(parts[0], "grid");
    const double hi = parse_number(parts[1], "grid");
    const double cnt = parse_number(parts[2], "grid");
    if (cnt < 0 || cnt != std::floor(cnt)) throw ofc::ParameterError("grid", "count must be a whole number");
    const int count = static_cast<int>(cnt);
    for (int i = 0; i < count; ++i) {
      g.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    }
    return g;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(' ') == std::string::npos) continue;
    g.push_back(parse_number(item, "grid"));
  }
  return g;
}

std::vector<SweepRow> cmd_sweep(const SweepCmdOptions& o) {
  const ofc::ModelKind kind = ofc::parse_model(o.model);
  if (o.grid.empty()) throw ofc::ParameterError("grid", "empty grid");
  if (o.param.empty()) throw ofc::ParameterError("param", "name the swept parameter");
  const std::string name = canonical_parameter(o.param);
  const auto& names = ofc::parameter_names(kind);
  const bool is_zeta = name == "zeta" && kind == ofc::ModelKind::kTwoOLEq;
  if (!is_zeta && std::find(names.begin(), names.end(), name) == names.end()) {
    throw ofc::ParameterError("param", "'" + o.param + "' is not a parameter of model " +
                                           std::string(ofc::model_name(kind)));
  }
  const ofc::TaskSpec task = o.task.spec();
  const ofc::ModelOptions mopts = o.muscle.model_options();
  const bool csv = wants(o.formats, "csv");
  const bool svg = wants(o.formats, "svg");

  ParameterFlags base = o.params;
  if (is_zeta) base.zeta.reset();
  ofc::ParameterMap fixed = base.collect();
  std::vector<SweepRow> rows;
  std::vector<ofc::ModelRun> runs;
  for (double v : o.grid) {
    ofc::ParameterMap p = fixed;
    if (is_zeta) {
      p.erase("d");
      if (!p.count("k")) throw ofc::ParameterError("k", "zeta sweep requires k");
      p["d"] = ofc::TwoOLParams::from_zeta(p["k"], v).d;
    } else {
      p[name] = v;
    }
    ofc::ModelRun run = ofc::run_model(kind, p, task, mopts);
    rows.push_back({v, summarize(run, task)});
    if (svg) runs.push_back(std::move(run));
  }

  const auto parent = std::filesystem::path(o.out).parent_path().string();
  ensure_directory(parent);
  if (csv) {
    std::ostringstream ss;
    write_csv_row(ss, {"param", "value", "peak_velocity_mps", "time_to_target_step",
                       "time_to_target_s", "terminal_std_m", "final_position_m", "overshoot_m"});
    for (const auto& r : rows) {
      const auto& s = r.summary;
      std::optional<double> tt_s;
      if (s.time_to_target) tt_s = *s.time_to_target * task.h;
      write_csv_row(ss, {is_zeta ? "zeta" : name, fmt(r.value), fmt(s.peak_velocity),
                         s.time_to_target ? fmt(*s.time_to_target) : std::string(), fmt(tt_s),
                         fmt(s.terminal_std), fmt(s.final_position), fmt(s.overshoot)});
    }
    write_file(o.out, ss.str());
  }
  if (svg) {
    std::filesystem::path p(o.out);
    p.replace_extension(".svg");
    write_file(p.string(), render_svg(sweep_panels(runs, o.grid, is_zeta ? "zeta" : name, task)));
  }
  return rows;
}

}  // namespace ofcpoint
