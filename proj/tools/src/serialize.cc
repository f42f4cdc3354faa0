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

#include "serialize.h"

#include "format.h"
#include "ofc/corpus.h"
#include "ofc/errors.h"

namespace ofcpoint {

json to_json(const ofc::ParameterMap& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

json to_json(const ofc::TaskSpec& t) {
  return json{{"origin", t.origin},
              {"target", t.target},
              {"width", t.width},
              {"n", t.n},
              {"h", t.h},
              {"start_position", t.start_position},
              {"start_velocity", t.start_velocity},
              {"start_acceleration", t.start_acceleration},
              {"start_cov", {{t.start_cov(0, 0), t.start_cov(0, 1)},
                             {t.start_cov(1, 0), t.start_cov(1, 1)}}}};
}

json to_json(const ofc::ConditionMeta& m) {
  json j{{"participant", m.participant},
         {"condition", m.condition},
         {"direction", ofc::direction_name(m.direction)},
         {"h", m.h}};
  if (m.origin) j["origin_m"] = *m.origin;
  if (m.target) j["target_m"] = *m.target;
  if (m.width) j["width_m"] = *m.width;
  return j;
}

ofc::TaskSpec task_from_json(const json& j) {
  try {
    ofc::TaskSpec t;
    t.origin = j.at("origin").get<double>();
    t.target = j.at("target").get<double>();
    t.width = j.at("width").get<double>();
    t.n = j.at("n").get<int>();
    t.h = j.value("h", ofc::kDefaultStepSeconds);
    t.start_position = j.value("start_position", t.origin);
    t.start_velocity = j.value("start_velocity", 0.0);
    t.start_acceleration = j.value("start_acceleration", 0.0);
    if (j.contains("start_cov")) {
      const auto& c = j.at("start_cov");
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) t.start_cov(r, s) = c.at(r).at(s).get<double>();
    }
    return t;
  } catch (const json::exception& e) {
    throw ofc::InputError(std::string("malformed task: ") + e.what());
  }
}

json fit_result_json(const ofc::FitResult& r, const std::string& condition) {
  std::vector<double> history = r.history;
  json j{{"model", std::string(ofc::model_name(r.model))},
         {"condition", condition},
         {"params", to_json(r.params)},
         {"loss", r.loss},
         {"history", history},
         {"evals", r.evaluations},
         {"failed_evals", r.failed_evaluations},
         {"generations", r.generations},
         {"converged", r.converged},
         {"success", r.success},
         {"seed", r.config.seed},
         {"config",
          {{"population", r.config.population_for(r.params.size())},
           {"max_generations", r.config.max_generations},
           {"tolerance", r.config.tolerance},
           {"patience", r.config.patience},
           {"mutation", r.config.mutation},
           {"crossover", r.config.crossover},
           {"polish_evaluations", r.config.polish_evaluations}}},
         {"task", to_json(r.task)}};
  return j;
}

StoredResult read_result(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ofc::InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  try {
    StoredResult r{ofc::parse_model(j.at("model").get<std::string>()), {}, std::nullopt, ""};
    for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<double>();
    if (j.contains("task")) r.task = task_from_json(j.at("task"));
    r.label = j.value("label", std::string(ofc::model_name(r.model)));
    return r;
  } catch (const json::exception& e) {
    throw ofc::InputError("'" + path + "': " + e.what());
  }
}

namespace {

json vec_json(const ofc::Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json mat_json(const ofc::Mat& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    a.push_back(std::move(row));
  }
  return a;
}

}  // namespace

json distribution_json(const ofc::ModelRun& run, const ofc::TaskSpec& task) {
  if (!run.moments) throw ofc::ContractError("run has no distribution");
  const auto& d = run.moments->state;
  json mean = json::array();
  json cov = json::array();
  for (const auto& s : d.steps()) {
    mean.push_back(vec_json(s.mean()));
    cov.push_back(mat_json(s.covariance()));
  }
  return json{{"model", std::string(ofc::model_name(run.kind))},
              {"N", task.n},
              {"h", d.h()},
              {"layout", d.layout()->names()},
              {"mean", std::move(mean)},
              {"cov", std::move(cov)}};
}

json ensemble_json(const ofc::TrajectoryEnsemble& e) {
  json mean = json::array();
  json cov = json::array();
  for (std::size_t n = 0; n < e.frames(); ++n) {
    mean.push_back({e.mean_position[n], e.mean_velocity[n]});
    const auto& c = e.covariance[n];
    cov.push_back({{c(0, 0), c(0, 1)}, {c(1, 0), c(1, 1)}});
  }
  return json{{"meta", to_json(e.meta)},
              {"N", e.steps()},
              {"h", e.h},
              {"trials", e.trials.size()},
              {"mean", std::move(mean)},
              {"cov", std::move(cov)}};
}

void write_trajectory_csv(std::ostream& out, const ofc::ModelRun& run,
                          const ofc::TaskSpec& task) {
  const auto& k = run.kinematics;
  write_csv_row(out, {"frame", "time_s", "pos_m", "vel_mps", "acc_mps2", "control"});
  for (std::size_t n = 0; n < k.position.size(); ++n) {
    write_csv_row(out, {fmt(n), fmt(static_cast<double>(n) * task.h), fmt(k.position[n]),
                        fmt(k.velocity[n]), fmt(k.acceleration[n]),
                        n < k.control.size() ? fmt(k.control[n]) : std::string()});
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace ofcpoint
