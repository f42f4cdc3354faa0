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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "commands.h"
#include "format.h"
#include "ofc/corpus.h"
#include "ofc/errors.h"
#include "serialize.h"

namespace ofcpoint {
namespace {

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '.';
    out += ok ? c : '_';
  }
  return out.empty() ? "_" : out;
}

std::string condition_key(const ofc::ConditionMeta& m) {
  return m.participant + "/" + m.condition + "/" + ofc::direction_name(m.direction);
}

bool selected(const ofc::ConditionMeta& m, const Selection& s) {
  if (s.participant && m.participant != *s.participant) return false;
  if (s.condition && m.condition != *s.condition) return false;
  if (s.direction && ofc::direction_name(m.direction) != *s.direction) return false;
  return true;
}

struct Prepared {
  ofc::ConditionMeta meta;
  std::optional<ofc::TrajectoryEnsemble> ensemble;
  std::string error;
};

Prepared prepare(const ofc::Corpus& corpus, const DataOptions& data) {
  Prepared p;
  p.meta = corpus.meta;
  try {
    p.ensemble = ofc::preprocess(corpus, data.preprocess()).ensemble;
  } catch (const ofc::Error& e) {
    p.error = e.code() + ": " + e.what();
  }
  return p;
}

// All parameter names in a stable order, for the summary columns.
std::vector<std::string> parameter_columns() {
  std::vector<std::string> cols;
  for (ofc::ModelKind k : ofc::all_models()) {
    for (const auto& n : ofc::parameter_names(k)) {
      if (std::find(cols.begin(), cols.end(), n) == cols.end()) cols.push_back(n);
    }
  }
  return cols;
}

}  // namespace

std::vector<FitRow> cmd_fit(const FitCmdOptions& o) {
  if (o.corpora.empty()) throw ofc::InputError("no corpus given");
  if (o.models.empty()) throw ofc::ParameterError("model", "at least one model is required");
  if (o.jobs < 1) throw ofc::ParameterError("jobs", "must be at least 1");
  if (o.select.direction && *o.select.direction != "left" && *o.select.direction != "right") {
    throw ofc::ParameterError("direction", "must be left or right");
  }
  std::vector<ofc::ModelKind> kinds;
  for (const auto& m : o.models) kinds.push_back(ofc::parse_model(m));
  o.config.validate();
  const ofc::ModelOptions mopts = o.muscle.model_options();

  std::vector<Prepared> conditions;
  for (const auto& path : o.corpora) {
    const ofc::Corpus c = ofc::load_corpus(path, o.data.scale());
    if (selected(c.meta, o.select)) conditions.push_back(prepare(c, o.data));
  }
  if (conditions.empty()) throw ofc::InputError("selection matches no condition");

  std::vector<FitRow> rows;
  std::set<std::string> used;
  for (const auto& c : conditions) {
    for (ofc::ModelKind k : kinds) {
      FitRow r;
      r.participant = c.meta.participant;
      r.condition = c.meta.condition;
      r.direction = ofc::direction_name(c.meta.direction);
      r.model = std::string(ofc::model_name(k));
      std::string base = sanitize(r.participant) + "_" + sanitize(r.condition) + "_" +
                         r.direction + "_" + r.model;
      std::string name = base;
      for (int i = 2; used.count(name); ++i) name = base + "-" + std::to_string(i);
      used.insert(name);
      r.file = join_path(o.out_dir, name + "_fit.json");
      rows.push_back(std::move(r));
    }
  }
  ensure_directory(o.out_dir);

  std::mutex progress_mutex;
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  auto work = [&]() {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      const Prepared& cond = conditions[i / kinds.size()];
      const ofc::ModelKind kind = kinds[i % kinds.size()];
      FitRow& row = rows[i];
      const auto t0 = std::chrono::steady_clock::now();
      if (!cond.ensemble) {
        row.error = cond.error;
      } else {
        try {
          const ofc::TaskSpec task = ofc::task_from_ensemble(*cond.ensemble);
          row.result = ofc::fit(kind, task, *cond.ensemble, o.config, mopts);
          row.result->run.reset();
        } catch (const ofc::Error& e) {
          row.error = e.code() + ": " + e.what();
        }
      }
      row.wall_time =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (row.result) {
        write_file(row.file, dump(fit_result_json(*row.result, condition_key(cond.meta))));
      }
      if (o.progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        ++done;
        std::cerr << "[" << done << "/" << rows.size() << "] " << condition_key(cond.meta) << " "
                  << row.model << ": "
                  << (row.result ? (row.result->success ? "loss " + fmt(row.result->loss)
                                                        : std::string("all candidates failed"))
                                 : row.error)
                  << std::endl;
      }
    }
  };
  const int workers = std::min<int>(o.jobs, static_cast<int>(rows.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  const auto cols = parameter_columns();
  std::ostringstream ss;
  std::vector<std::string> header = {"participant", "condition",    "direction",   "model",
                                     "success",     "converged",    "loss",        "evals",
                                     "failed_evals", "generations", "wall_time_s"};
  for (const auto& c : cols) header.push_back(c);
  header.push_back("error");
  write_csv_row(ss, header);
  for (const auto& r : rows) {
    std::vector<std::string> cells = {r.participant, r.condition, r.direction, r.model};
    if (r.result) {
      const auto& f = *r.result;
      cells.insert(cells.end(), {f.success ? "1" : "0", f.converged ? "1" : "0", fmt(f.loss),
                                 fmt(f.evaluations), fmt(f.failed_evaluations),
                                 fmt(f.generations), fmt(r.wall_time)});
      for (const auto& c : cols) {
        auto it = f.params.find(c);
        cells.push_back(it == f.params.end() ? std::string() : fmt(it->second));
      }
    } else {
      cells.insert(cells.end(), {"0", "0", "", "", "", "", fmt(r.wall_time)});
      for (std::size_t i = 0; i < cols.size(); ++i) cells.emplace_back();
    }
    cells.push_back(r.error);
    write_csv_row(ss, cells);
  }
  write_file(join_path(o.out_dir, "fit_summary.csv"), ss.str());
  return rows;
}

// ---- compare

namespace {

struct Reference {
  std::string label;
  Kinematics kinematics;
  ofc::TaskSpec task;
};

struct Candidate {
  std::string label;
  std::string kind;
  std::optional<StoredResult> result;
  std::optional<ofc::TrajectoryEnsemble> ensemble;
};

void accumulate(Comparison& sum, const Comparison& c) {
  sum.reference_frames += c.reference_frames;
  sum.candidate_frames += c.candidate_frames;
  sum.frames += c.frames;
  sum.sse_position += c.sse_position;
  sum.sse_velocity += c.sse_velocity;
  sum.sse_acceleration += c.sse_acceleration;
  sum.max_position += c.max_position;
  sum.max_velocity += c.max_velocity;
  sum.max_acceleration += c.max_acceleration;
}

}  // namespace

std::vector<CompareRow> cmd_compare(const CompareCmdOptions& o) {
  const ofc::ModelOptions mopts = o.muscle.model_options();
  std::vector<Reference> refs;
  for (const auto& path : o.corpora) {
    const ofc::Corpus c = ofc::load_corpus(path, o.data.scale());
    const ofc::TrajectoryEnsemble e = ofc::preprocess(c, o.data.preprocess()).ensemble;
    refs.push_back({condition_key(c.meta), ensemble_kinematics(e), ofc::task_from_ensemble(e)});
  }
  if (o.reference_result) {
    const StoredResult r = read_result(*o.reference_result);
    if (!r.task) throw ofc::InputError("'" + *o.reference_result + "' has no task");
    const ofc::ModelRun run = ofc::run_model(r.model, r.params, *r.task, mopts);
    refs.push_back({"result:" + r.label, run_kinematics(run), *r.task});
  }
  if (refs.empty()) throw ofc::InputError("no reference given");

  std::vector<Candidate> cands;
  std::set<std::string> labels;
  auto unique = [&](std::string l) {
    const std::string base = l;
    for (int i = 2; labels.count(l); ++i) l = base + "#" + std::to_string(i);
    labels.insert(l);
    return l;
  };
  for (const auto& path : o.results) {
    StoredResult r = read_result(path);
    cands.push_back({unique(r.label), "model", std::move(r), std::nullopt});
  }
  for (const auto& path : o.externals) {
    const ofc::Corpus c = ofc::load_corpus(path, o.data.scale());
    ofc::TrajectoryEnsemble e = ofc::preprocess(c, o.data.preprocess()).ensemble;
    cands.push_back({unique(std::filesystem::path(path).stem().string()), "external",
                     std::nullopt, std::move(e)});
  }
  if (cands.empty()) throw ofc::InputError("nothing to compare: give --result or --external");

  std::vector<CompareRow> rows;
  for (const auto& ref : refs) {
    for (const auto& cand : cands) {
      Kinematics k;
      if (cand.result) {
        k = run_kinematics(ofc::run_model(cand.result->model, cand.result->params, ref.task, mopts));
      } else {
        if (std::abs(cand.ensemble->h - ref.task.h) > 1e-9) {
          throw ofc::InputError("external set '" + cand.label + "' is sampled at h=" +
                                fmt(cand.ensemble->h) + " s, reference at h=" + fmt(ref.task.h) +
                                " s");
        }
        k = ensemble_kinematics(*cand.ensemble);
      }
      rows.push_back({ref.label, cand.label, cand.kind, compare(ref.kinematics, k)});
    }
  }

  // Aggregate: frame counts are summed, metrics averaged over conditions.
  std::vector<CompareRow> agg;
  for (const auto& cand : cands) {
    Comparison sum;
    double mwd = 0.0, mkl = 0.0;
    bool dist = true;
    std::size_t count = 0;
    for (const auto& r : rows) {
      if (r.label != cand.label) continue;
      accumulate(sum, r.metrics);
      if (r.metrics.mwd && r.metrics.mkl) {
        mwd += *r.metrics.mwd;
        mkl += *r.metrics.mkl;
      } else {
        dist = false;
      }
      ++count;
    }
    const double inv = 1.0 / static_cast<double>(count);
    sum.sse_position *= inv;
    sum.sse_velocity *= inv;
    sum.sse_acceleration *= inv;
    sum.max_position *= inv;
    sum.max_velocity *= inv;
    sum.max_acceleration *= inv;
    if (dist) {
      sum.mwd = mwd * inv;
      sum.mkl = mkl * inv;
    }
    agg.push_back({"all", cand.label, "aggregate", sum});
  }
  rows.insert(rows.end(), agg.begin(), agg.end());

  std::ostringstream ss;
  write_csv_row(ss, {"condition", "label", "kind", "reference_frames", "candidate_frames",
                     "frames", "sse_pos", "sse_vel", "sse_acc", "maxerr_pos", "maxerr_vel",
                     "maxerr_acc", "mwd", "mkl"});
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    write_csv_row(ss, {r.condition, r.label, r.kind, fmt(m.reference_frames),
                       fmt(m.candidate_frames), fmt(m.frames), fmt(m.sse_position),
                       fmt(m.sse_velocity), fmt(m.sse_acceleration), fmt(m.max_position),
                       fmt(m.max_velocity), fmt(m.max_acceleration), fmt(m.mwd), fmt(m.mkl)});
  }
  ensure_directory(std::filesystem::path(o.out).parent_path().string());
  write_file(o.out, ss.str());
  return rows;
}

}  // namespace ofcpoint
