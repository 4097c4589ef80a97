// Copyright 2026 The Authors.
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

#ifndef ROBSUB_IO_HPP_
#define ROBSUB_IO_HPP_

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "robsub/constraints.hpp"
#include "robsub/continuous.hpp"
#include "robsub/experiment.hpp"
#include "robsub/offline.hpp"
#include "robsub/online.hpp"

namespace robsub {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Ratings CSV: header row of element labels, one row per user, decimal values.
// ---------------------------------------------------------------------------
struct RatingsCsv {
  Eigen::MatrixXd ratings;
  std::vector<std::string> labels;
};
RatingsCsv read_ratings_csv(const std::string& path);
void write_ratings_csv(const std::string& path, const Eigen::MatrixXd& ratings,
                       const std::vector<std::string>& labels);

// ---------------------------------------------------------------------------
// Instance documents: ground + objective specs + constraint spec + epsilon.
// ---------------------------------------------------------------------------
GroundSet ground_from_json(const Json& j);
OraclePtr oracle_from_json(const Json& j, const GroundSet& ground);
std::vector<OraclePtr> objectives_from_json(const Json& j, const GroundSet& ground);
MatroidPtr matroid_from_json(const Json& j, const GroundSet& ground);
Constraint constraint_from_json(const Json& j, const GroundSet& ground);
RobustInstance instance_from_json(const Json& j);
RobustInstance load_instance(const std::string& path);

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------
Json solution_to_json(const BiCriteriaSolution& sol);
Json brute_force_to_json(const BruteForceResult& result);
Json trace_to_json(const AscentTrace& trace);  // per-tau values + reference curve
Json experiment_to_json(const ExperimentConfig& cfg, const ExperimentResult& result);
Json regret_to_json(const RegretReport& report);
std::string regret_to_csv(const RegretReport& report);
Json round_record_to_json(const RoundRecord& record);

Json set_to_json(const ElementSet& s);
ElementSet set_from_json(const Json& j, int n);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace robsub

#endif  // ROBSUB_IO_HPP_
