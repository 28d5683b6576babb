// Copyright 2026 The dynsetcover Authors
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


// Replays an update stream through one engine, with optional audits, exact
// OPT and recourse verification, and streams metrics rows as it goes.

#ifndef DSC_RUNNER_HPP_
#define DSC_RUNNER_HPP_

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dsc/engine.hpp"
#include "dsc/instance.hpp"
#include "dsc/metrics.hpp"

namespace dsc {

enum class Algo { kLogN, kF };

Algo ParseAlgo(std::string_view name);  // throws std::invalid_argument
const char* AlgoName(Algo a);

struct EngineOptions {
  Algo algo = Algo::kLogN;
  std::int64_t c_spd = 0;  // <= 0 selects the engine default
  double gc_alpha = -1;    // negative selects the engine default
  bool deamortize = true;
  bool validate = false;
};

std::unique_ptr<DynamicSetCover> MakeEngine(std::shared_ptr<const SetSystem> sys,
                                            const EngineOptions& opts);

struct RunOptions {
  EngineOptions engine;
  // Steps between full audits; 0 picks 1 for n_cap <= 500 and 16 above,
  // negative disables auditing.
  std::int64_t audit_every = 0;
  bool oracle_exact = false;
  std::int64_t oracle_cap = 40;
  // Recompute recourse from output snapshots and compare with the counters.
  bool verify_recourse = false;
  // Check the output covers every live element after each step.
  bool check_feasibility = true;
  bool keep_reports = true;
};

std::int64_t DefaultAuditEvery(std::int64_t n_cap);

struct RunResult {
  std::vector<StepReport> reports;  // empty unless keep_reports
  Summary summary;
  std::int64_t feasibility_violations = 0;
  std::int64_t recourse_mismatches = 0;
  std::int64_t insertion_recourse_bound = 0;
  std::int64_t gc_rate = 0;
  ScheduleMonitor monitor;
  std::vector<SetId> final_output;
  bool audit_failed = false;
};

// Writes a CSV header and one row per step to csv when non-null.
RunResult RunStream(std::shared_ptr<const SetSystem> sys, const UpdateStream& stream,
                    const RunOptions& opts, std::ostream* csv = nullptr);

}  // namespace dsc

#endif  // DSC_RUNNER_HPP_
