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

#include "cli.h"

#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.h"
#include "format.h"
#include "json_config.h"
#include "ofc/errors.h"

namespace ofcpoint {
namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

void add_task(CLI::App* sub, TaskOptions& t) {
  sub->add_option("--origin", t.origin, "Start position [m]")->capture_default_str();
  sub->add_option("--target", t.target, "Target position [m]")->capture_default_str();
  sub->add_option("--width", t.width, "Target width [m]")->capture_default_str();
  sub->add_option("--n", t.n, "Number of time steps")->capture_default_str();
  sub->add_option("--h", t.h, "Step length [s]")->capture_default_str();
}

void add_params(CLI::App* sub, ParameterFlags& p) {
  auto* g = sub;
  g->add_option("--k", p.k, "2OL stiffness [1/s^2]");
  g->add_option("--d", p.d, "2OL damping [1/s]");
  g->add_option("--zeta", p.zeta, "2OL damping ratio (with --k)");
  g->add_option("--nmj", p.n_mj, "MinJerk surge length [steps]");
  g->add_option("--omega-r", p.omega_r, "Effort weight");
  g->add_option("--omega-v", p.omega_v, "Velocity weight");
  g->add_option("--omega-f", p.omega_f, "Force weight");
  g->add_option("--sigma-u", p.sigma_u, "Signal-dependent control noise");
  g->add_option("--sigma-s", p.sigma_s, "Observation noise scale (lqg)");
  g->add_option("--sigma-v", p.sigma_v, "Velocity perception noise (elqg)");
  g->add_option("--sigma-f", p.sigma_f, "Force perception noise (elqg)");
  g->add_option("--sigma-e", p.sigma_e, "Gaze noise (elqg)");
  g->add_option("--gamma", p.gamma, "Eccentricity noise factor (elqg)");
  g->add_option("--ns", p.n_s, "Saccade step (elqg)");
  g->add_option("--param", p.extra, "Additional name=value parameter")->take_all();
}

void add_muscle(CLI::App* sub, MuscleOptions& m) {
  sub->add_option("--tau1", m.tau1, "Excitation time constant [s]")->capture_default_str();
  sub->add_option("--tau2", m.tau2, "Activation time constant [s]")->capture_default_str();
  sub->add_option("--mass", m.mass, "Effector mass [kg]")->capture_default_str();
  sub->add_option("--solver-iterations", m.solver_iterations, "LQG coordinate-descent cap")
      ->capture_default_str();
  sub->add_option("--solver-tolerance", m.solver_tolerance, "LQG relative cost tolerance")
      ->capture_default_str();
}

void add_data(CLI::App* sub, DataOptions& d) {
  sub->add_option("--px-per-m", d.px_per_m, "Corpus positions are pixels at this density");
  sub->add_flag("--no-strip{false}", d.strip_reaction_time, "Keep reaction-time frames");
  sub->add_flag("--no-outliers{false}", d.remove_outliers, "Skip outlier removal");
}

std::vector<std::string> split_formats(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& s : in) {
    std::string cur;
    for (char c : s + ",") {
      if (c == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal feedback control models of mouse pointing", "ofcpoint"};
  // "--h" is the step length, so help has no short alias.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "JSON file mirroring the command-line flags");
  app.config_formatter(std::make_shared<JsonConfig>([&app]() {
    std::vector<std::string> scope;
    for (const CLI::App* s : app.get_subcommands()) scope.push_back(s->get_name());
    return scope;
  }));

  SimulateOptions sim;
  std::vector<std::string> sim_formats{"csv", "json"};
  auto* s = app.add_subcommand("simulate", "Simulate one model on one task");
  s->add_option("--model", sim.model, "2ol-eq, minjerk, lqr, lqg or elqg")->required();
  add_task(s, sim.task);
  add_params(s, sim.params);
  add_muscle(s, sim.muscle);
  s->add_option("--out-dir", sim.out_dir, "Output directory")->capture_default_str();
  s->add_option("--prefix", sim.prefix, "Output file prefix (default: model name)");
  s->add_option("--format", sim_formats, "csv, json, svg (comma separated)")->delimiter(',');
  s->add_option("--seed", sim.seed, "Seed for --samples")->capture_default_str();
  s->add_option("--samples", sim.samples, "Also write this many sampled trajectories");

  SynthesizeCmdOptions syn;
  auto* y = app.add_subcommand("synthesize", "Write a synthetic corpus sampled from a model");
  y->add_option("--model", syn.model, "Generating model")->required();
  add_task(y, syn.task);
  add_params(y, syn.params);
  add_muscle(y, syn.muscle);
  y->add_option("--trials", syn.trials, "Number of trials")->capture_default_str();
  y->add_option("--seed", syn.seed, "Random seed")->capture_default_str();
  y->add_option("--jitter", syn.jitter, "Additive position noise for deterministic models [m]");
  y->add_option("--participant", syn.participant, "Participant id")->capture_default_str();
  y->add_option("--condition", syn.condition, "Condition id (default: model name)");
  y->add_option("--out", syn.out, "Output corpus CSV")->required();

  PreprocessCmdOptions pre;
  std::vector<std::string> pre_formats{"json"};
  auto* p = app.add_subcommand("preprocess", "Build trajectory ensembles from corpora");
  p->add_option("--corpus", pre.corpora, "Corpus CSV (repeatable)")->required()->take_all();
  add_data(p, pre.data);
  p->add_option("--out-dir", pre.out_dir, "Output directory")->capture_default_str();
  p->add_option("--format", pre_formats, "json, csv, svg (comma separated)")->delimiter(',');

  FitCmdOptions fit;
  bool quiet = false;
  std::optional<std::string> sel_participant, sel_condition, sel_direction;
  auto* f = app.add_subcommand("fit", "Fit model parameters to corpus conditions");
  f->add_option("--corpus", fit.corpora, "Corpus CSV, one per condition (repeatable)")
      ->required()
      ->take_all();
  f->add_option("--model", fit.models, "Model(s) to fit (repeatable)")->required()->take_all();
  f->add_option("--participant", sel_participant, "Only this participant");
  f->add_option("--condition", sel_condition, "Only this condition");
  f->add_option("--direction", sel_direction, "Only this direction (left or right)");
  add_data(f, fit.data);
  add_muscle(f, fit.muscle);
  f->add_option("--population", fit.config.population, "Population size (0: automatic)")
      ->capture_default_str();
  f->add_option("--max-generations", fit.config.max_generations, "Generation cap")
      ->capture_default_str();
  f->add_option("--tolerance", fit.config.tolerance, "Relative improvement tolerance")
      ->capture_default_str();
  f->add_option("--patience", fit.config.patience, "Generations over which improvement is measured")
      ->capture_default_str();
  f->add_option("--polish", fit.config.polish_evaluations,
                "Nelder-Mead evaluations spent refining the best member (0: off)")
      ->capture_default_str();
  f->add_option("--mutation", fit.config.mutation, "Differential weight")->capture_default_str();
  f->add_option("--crossover", fit.config.crossover, "Crossover probability")
      ->capture_default_str();
  f->add_option("--seed", fit.config.seed, "Random seed")->capture_default_str();
  f->add_option("--threads", fit.config.threads, "Loss-evaluation threads per fit")
      ->capture_default_str();
  f->add_option("--jobs", fit.jobs, "Conditions fitted in parallel")->capture_default_str();
  f->add_option("--out-dir", fit.out_dir, "Output directory")->capture_default_str();
  f->add_flag("--quiet", quiet, "No progress lines");

  CompareCmdOptions cmp;
  std::optional<std::string> reference_result;
  auto* c = app.add_subcommand("compare", "Compare fitted models against reference data");
  c->add_option("--corpus", cmp.corpora, "Reference corpus CSV (repeatable)")->take_all();
  c->add_option("--reference-result", reference_result,
                "Use a model result as the reference instead of a corpus");
  c->add_option("--result", cmp.results, "FitResult JSON (repeatable)")->take_all();
  c->add_option("--external", cmp.externals, "External trajectory set, corpus format")
      ->take_all();
  add_data(c, cmp.data);
  add_muscle(c, cmp.muscle);
  c->add_option("--out", cmp.out, "Comparison CSV")->capture_default_str();

  SweepCmdOptions sw;
  std::vector<std::string> sw_formats{"csv"};
  std::string grid_spec;
  auto* w = app.add_subcommand("sweep", "Vary one parameter and summarize each run");
  w->add_option("--model", sw.model, "Model")->required();
  add_task(w, sw.task);
  add_params(w, sw.params);
  add_muscle(w, sw.muscle);
  w->add_option("--vary", sw.param, "Parameter to vary")->required();
  w->add_option("--grid", grid_spec, "Values: a,b,c or lo:hi:count")->required();
  w->add_option("--out", sw.out, "Sweep CSV (SVG uses the same stem)")->capture_default_str();
  w->add_option("--format", sw_formats, "csv, svg (comma separated)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: usage: " << one_line(e.what()) << "\n";
    return kExitUsage;
  }

  try {
    if (s->parsed()) {
      sim.formats = split_formats(sim_formats);
      const SimulateResult r = cmd_simulate(sim);
      for (const auto& file : r.files) out << file << "\n";
    } else if (y->parsed()) {
      out << cmd_synthesize(syn) << "\n";
    } else if (p->parsed()) {
      pre.formats = split_formats(pre_formats);
      for (const auto& file : cmd_preprocess(pre)) out << file << "\n";
    } else if (f->parsed()) {
      fit.select = {sel_participant, sel_condition, sel_direction};
      fit.progress = !quiet;
      const auto rows = cmd_fit(fit);
      out << join_path(fit.out_dir, "fit_summary.csv") << "\n";
      for (const auto& r : rows) {
        if (r.result) out << r.file << "\n";
      }
    } else if (c->parsed()) {
      cmp.reference_result = reference_result;
      cmd_compare(cmp);
      out << cmp.out << "\n";
    } else if (w->parsed()) {
      sw.grid = parse_grid(grid_spec);
      sw.formats = split_formats(sw_formats);
      cmd_sweep(sw);
      out << sw.out << "\n";
    }
  } catch (const ofc::ParameterError& e) {
    err << "error: " << e.code() << ": " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const ofc::Error& e) {
    err << "error: " << e.code() << ": " << one_line(e.what()) << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: internal: " << one_line(e.what()) << "\n";
    return kExitFailure;
  }
  return 0;
}

}  // namespace ofcpoint
