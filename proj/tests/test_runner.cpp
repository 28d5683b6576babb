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


#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "dsc/runner.hpp"
#include "test_util.hpp"

namespace dsc {
namespace {

TEST_SUITE("runner") {
  TEST_CASE("algorithm names round-trip") {
    CHECK(ParseAlgo("logn") == Algo::kLogN);
    CHECK(ParseAlgo("f") == Algo::kF);
    CHECK(std::string(AlgoName(Algo::kF)) == "f");
    CHECK_THROWS_AS(ParseAlgo("greedy"), std::invalid_argument);
  }

  TEST_CASE("audit cadence follows the universe cap") {
    CHECK(DefaultAuditEvery(40) == 1);
    CHECK(DefaultAuditEvery(500) == 1);
    CHECK(DefaultAuditEvery(501) == 16);
  }

  TEST_CASE("repeat runs write identical metrics") {
    const Instance inst = testing::Churn(120, 40, 4, 800, 3);
    auto sys = testing::Share(inst.system);
    for (Algo a : {Algo::kLogN, Algo::kF}) {
      RunOptions opts;
      opts.engine.algo = a;
      opts.engine.c_spd = 3;
      std::ostringstream first, second;
      RunStream(sys, inst.stream, opts, &first);
      RunStream(sys, inst.stream, opts, &second);
      CHECK(first.str() == second.str());
      CHECK(first.str().size() > 100);
    }
  }

  TEST_CASE("counted recourse matches output snapshots") {
    const Instance inst = testing::Churn(150, 45, 3, 1000, 8);
    auto sys = testing::Share(inst.system);
    for (Algo a : {Algo::kLogN, Algo::kF}) {
      RunOptions opts;
      opts.engine.algo = a;
      opts.engine.c_spd = 2;
      opts.audit_every = -1;  // slow threads break the schedule bounds
      opts.verify_recourse = true;
      const RunResult r = RunStream(sys, inst.stream, opts);
      CHECK(r.recourse_mismatches == 0);
      CHECK(r.feasibility_violations == 0);
      CHECK_FALSE(r.audit_failed);
      CHECK(r.summary.max_insertion_recourse <= r.insertion_recourse_bound);
      CHECK(r.summary.steps == 1000);
      CHECK(r.reports.size() == 1000);
    }
  }

  TEST_CASE("exact oracle reports ratios on small live sets") {
    const Instance inst = testing::Churn(30, 12, 3, 300, 5);
    RunOptions opts;
    opts.oracle_exact = true;
    const RunResult r = RunStream(testing::Share(inst.system), inst.stream, opts);
    REQUIRE(r.summary.max_ratio.has_value());
    CHECK(*r.summary.max_ratio >= 1.0);
    CHECK_FALSE(r.audit_failed);
  }

  TEST_CASE("dropping reports still summarizes") {
    const Instance inst = testing::Churn(60, 20, 3, 400, 2);
    auto sys = testing::Share(inst.system);
    RunOptions keep, drop;
    drop.keep_reports = false;
    const RunResult a = RunStream(sys, inst.stream, keep);
    const RunResult b = RunStream(sys, inst.stream, drop);
    CHECK(b.reports.empty());
    CHECK(a.summary.max_total_recourse == b.summary.max_total_recourse);
    CHECK(a.summary.mean_ds_ops == b.summary.mean_ds_ops);
    CHECK(a.final_output == b.final_output);
  }
}

}  // namespace
}  // namespace dsc
