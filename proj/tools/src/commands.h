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

#ifndef OFCPOINT_COMMANDS_H_
#define OFCPOINT_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "analysis.h"
#include "ofc/differential_evolution.h"
#include "ofc/fitting.h"
#include "ofc/model_registry.h"

namespace ofcpoint {

// Defaults describe a 0.212 m reach to a 0.0141 m target over 0.97 s.
struct TaskOptions {
  double origin = 0.0;
  double target = 0.212;
  double width = 0.0141;
  int n = 485;
  double h = 0.002;

  ofc::TaskSpec spec() const;
};

// Parameter values as given on the command line; unset entries stay empty.
struct ParameterFlags {
  std::optional<double> k, d, zeta, n_mj;
  std::optional<double> omega_r, omega_v, omega_f;
  std::optional<double> sigma_u, sigma_s, sigma_v, sigma_f, sigma_e, gamma, n_s;
  std::vector<std::string> extra;  // name=value

  // Everything that was set, with zeta folded into d. No completeness check.
  ofc::ParameterMap collect() const;
};

// Accepts canonical names and the flag spellings (sigma-u, nmj, ns, ...).
std::string canonical_parameter(const std::string& name);

// Collects, applies zeta, and checks completeness for the model.
ofc::ParameterMap resolve_parameters(ofc::ModelKind kind, const ParameterFlags& flags);

struct MuscleOptions {
  double tau1 = 0.04;
  double tau2 = 0.04;
  double mass = 1.0;
  int solver_iterations = 20;
  double solver_tolerance = 1e-3;

  ofc::ModelOptions model_options() const;
};

struct DataOptions {
  double px_per_m = 0.0;  // 0 reads positions as meters
  bool strip_reaction_time = true;
  bool remove_outliers = true;

  double scale() const;
  ofc::PreprocessOptions preprocess() const;
};

bool wants(const std::vector<std::string>& formats, const std::string& f);

// ---- simulate

struct SimulateOptions {
  std::string model;
  TaskOptions task;
  ParameterFlags params;
  MuscleOptions muscle;
  std::string out_dir = ".";
  std::string prefix;  // defaults to the model name
  std::vector<std::string> formats = {"csv", "json"};
  std::uint64_t seed = 0;
  int samples = 0;  // sampled trajectories written as a corpus
};

struct SimulateResult {
  std::vector<std::string> files;
  RunSummary summary;
};

SimulateResult cmd_simulate(const SimulateOptions& o);

// ---- synthesize

struct SynthesizeCmdOptions {
  std::string model;
  TaskOptions task;
  ParameterFlags params;
  MuscleOptions muscle;
  int trials = 20;
  std::uint64_t seed = 0;
  double jitter = 0.0;
  std::string participant = "synthetic";
  std::string condition;
  std::string out;
};

std::string cmd_synthesize(const SynthesizeCmdOptions& o);

// ---- preprocess

struct PreprocessCmdOptions {
  std::vector<std::string> corpora;
  DataOptions data;
  std::string out_dir = ".";
  std::vector<std::string> formats = {"json"};
};

std::vector<std::string> cmd_preprocess(const PreprocessCmdOptions& o);

// ---- fit

struct Selection {
  std::optional<std::string> participant;
  std::optional<std::string> condition;
  std::optional<std::string> direction;
};

struct FitCmdOptions {
  std::vector<std::string> corpora;
  std::vector<std::string> models;
  Selection select;
  DataOptions data;
  MuscleOptions muscle;
  ofc::FitConfig config;
  int jobs = 1;
  std::string out_dir = ".";
  bool progress = true;
};

struct FitRow {
  std::string participant;
  std::string condition;
  std::string direction;
  std::string model;
  std::optional<ofc::FitResult> result;
  std::string error;  // set when the condition could not be fitted at all
  double wall_time = 0.0;
  std::string file;
};

std::vector<FitRow> cmd_fit(const FitCmdOptions& o);

// ---- compare

struct CompareCmdOptions {
  std::vector<std::string> corpora;       // references, one per condition
  std::optional<std::string> reference_result;
  std::vector<std::string> results;       // FitResult JSON files
  std::vector<std::string> externals;     // trajectory sets in corpus format
  DataOptions data;
  MuscleOptions muscle;
  std::string out = "comparison.csv";
};

struct CompareRow {
  std::string condition;
  std::string label;
  std::string kind;  // model | external | aggregate
  Comparison metrics;
};

std::vector<CompareRow> cmd_compare(const CompareCmdOptions& o);

// ---- sweep

struct SweepCmdOptions {
  std::string model;
  TaskOptions task;
  ParameterFlags params;
  MuscleOptions muscle;
  std::string param;
  std::vector<double> grid;
  std::string out = "sweep.csv";
  std::vector<std::string> formats = {"csv"};
};

struct SweepRow {
  double value = 0.0;
  RunSummary summary;
};

std::vector<SweepRow> cmd_sweep(const SweepCmdOptions& o);

// "lo:hi:count" or "a,b,c"
std::vector<double> parse_grid(const std::string& spec);

}  // namespace ofcpoint

#endif  // OFCPOINT_COMMANDS_H_
