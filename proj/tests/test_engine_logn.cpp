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


#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "dsc/engine_logn.hpp"
#include "dsc/oracle.hpp"
#include "test_util.hpp"

namespace dsc {
namespace {

bool OutputCovers(const DynamicSetCover& engine, const SetSystem& sys) {
  const std::vector<SetId> out = engine.OutputSets();
  for (ElementId e = 0; e < sys.universe_size(); ++e) {
    if (!engine.live()[e]) continue;
    bool hit = false;
    for (SetId s : sys.incident(e)) hit = hit || std::binary_search(out.begin(), out.end(), s);
    if (!hit) return false;
  }
  return true;
}

void RunToQuiescence(DynamicSetCover& engine, int limit = 10000) {
  for (int i = 0; i < limit && !engine.Quiescent(); ++i) engine.Step({Op::kIdle, -1});
  REQUIRE(engine.Quiescent());
}

LogNAuditOptions Structural() {
  LogNAuditOptions o;
  o.tidy.reset();
  o.schedule_bounds = false;
  return o;
}

TEST_SUITE("engine_logn") {
  TEST_CASE("fresh engine has an empty output") {
    LogNEngine engine(testing::Share(testing::CycleSystem()));
    CHECK(engine.OutputSets().empty());
    CHECK(engine.Audit().ok());
    CHECK(engine.Quiescent());
  }

  TEST_CASE("first insert adds the smallest containing set at level 0") {
    const SetSystem sys(4, {{1}, {1, 3}, {0, 2}, {0}});
    LogNEngine engine(testing::Share(sys));
    const StepReport r = engine.Step({Op::kInsert, 0});
    CHECK(r.insertion_recourse == 1);
    CHECK(r.deletion_recourse == 0);
    CHECK(engine.foreground().SetLevel(2) == std::optional<Level>(0));
    CHECK(engine.foreground().NumSets() == 1);
    CHECK(engine.OutputSets() == std::vector<SetId>{2});
  }

  TEST_CASE("deleting a covered element keeps the sets") {
    // Sub-universes this small are rebuilt within the step, which drops the
    // dormant element; the greedy still lands on the same two sets.
    LogNEngine engine(testing::Share(testing::CycleSystem()));
    for (ElementId e : {0, 1, 2, 3}) engine.Step({Op::kInsert, e});
    RunToQuiescence(engine);
    const auto before = engine.foreground().Sets();
    const StepReport r = engine.Step({Op::kDelete, 1});
    CHECK(r.insertion_recourse == 0);
    CHECK(r.deletion_recourse == 0);
    CHECK_FALSE(engine.foreground().Find(1).has_value());
    CHECK(engine.foreground().Sets() == before);
  }

  TEST_CASE("4-cycle insert-only run reaches a cover within twice optimum") {
    const SetSystem sys = testing::CycleSystem();
    LogNEngine engine(testing::Share(sys));
    for (ElementId e : {0, 1, 2, 3}) {
      engine.Step({Op::kInsert, e});
      CHECK(OutputCovers(engine, sys));
    }
    RunToQuiescence(engine);
    CHECK(OutputCovers(engine, sys));
    CHECK(engine.OutputSize() <= 2 * testing::BruteForceOpt(sys, {0, 1, 2, 3}));
    CHECK(engine.Audit().ok());
  }

  TEST_CASE("illegal updates are rejected") {
    LogNEngine engine(testing::Share(testing::CycleSystem()));
    engine.Step({Op::kInsert, 1});
    CHECK_THROWS_AS(engine.Step({Op::kInsert, 1}), std::invalid_argument);
    CHECK_THROWS_AS(engine.Step({Op::kDelete, 2}), std::invalid_argument);
    CHECK_THROWS_AS(engine.Step({Op::kInsert, 9}), std::invalid_argument);
    CHECK_THROWS_AS(LogNEngine(testing::Share(testing::CycleSystem()), LogNConfig{0}),
                    std::invalid_argument);
  }

  TEST_CASE("structural invariants hold at every step for slow threads") {
    // Small speeds keep threads alive across many steps and exercise every
    // phase, delta rule and switch.
    for (std::int64_t c : {1, 2, 3, 5}) {
      for (std::uint64_t seed : {1u, 2u}) {
        const Instance inst = testing::Churn(150, 45, 3, 1500, seed);
        auto sys = testing::Share(inst.system);
        LogNConfig cfg;
        cfg.c_spd = c;
        cfg.validate = true;
        LogNEngine engine(sys, cfg);
        std::int64_t worst = 0;
        for (const Update& u : inst.stream) {
          const StepReport r = engine.Step(u);
          worst = std::max(worst, r.insertion_recourse);
          const AuditReport rep = engine.AuditStep(Structural());
          REQUIRE_MESSAGE(rep.ok(), "c=" << c << " seed=" << seed << " t=" << engine.time()
                                         << " " << rep.ToString());
          REQUIRE(r.total_recourse() <= 2 * engine.insertion_recourse_bound() + engine.gc_rate());
        }
        CHECK(worst <= engine.insertion_recourse_bound());
        CHECK(engine.monitor().threads_ended() > 0);
      }
    }
  }

  TEST_CASE("tidy and stable hold at the default speed") {
    const Instance inst = testing::Churn(200, 60, 3, 2000, 3);
    LogNEngine engine(testing::Share(inst.system));
    for (const Update& u : inst.stream) {
      engine.Step(u);
      const AuditReport rep = engine.Audit();
      REQUIRE_MESSAGE(rep.ok(), "t=" << engine.time() << " " << rep.ToString());
    }
  }

  TEST_CASE("copy pointer never rises") {
    const Instance inst = testing::Churn(120, 40, 3, 800, 6);
    LogNConfig cfg;
    cfg.c_spd = 2;
    LogNEngine engine(testing::Share(inst.system), cfg);
    std::vector<std::pair<std::int64_t, Level>> last(engine.max_level() + 1, {-1, 0});
    for (const Update& u : inst.stream) {
      engine.Step(u);
      for (const ThreadSummary& ts : engine.Threads()) {
        auto& [start, ptr] = last[ts.k];
        if (start == ts.t_start) CHECK(ts.pointer <= ptr);
        CHECK(ts.pointer <= ts.k + 1);
        start = ts.t_start;
        ptr = ts.pointer;
      }
    }
  }

  TEST_CASE("first completed run of the top thread on a static snapshot") {
    const Instance inst = testing::Churn(90, 25, 3, 1, 9);
    auto sys = testing::Share(inst.system);
    LogNConfig cfg;
    cfg.c_spd = 4;
    LogNEngine engine(sys, cfg);
    for (ElementId e = 0; e < 90; ++e) engine.Step({Op::kInsert, e});
    const std::int64_t last_update = engine.time();
    const Level top = engine.max_level();
    const CompletedRun* run = nullptr;
    for (int i = 0; i < 2000; ++i) {
      engine.Step({Op::kIdle, -1});
      run = engine.LastCompletedRun(top);
      if (run != nullptr && run->t_start > last_update) break;
    }
    REQUIRE(run != nullptr);
    REQUIRE(run->t_start > last_update);
    std::vector<ElementId> live(90);
    for (int i = 0; i < 90; ++i) live[i] = i;
    CHECK(run->picks == OfflineGreedy(*sys, live, top));
  }

  TEST_CASE("identical runs produce identical reports") {
    const Instance inst = testing::Churn(100, 30, 4, 600, 12);
    auto sys = testing::Share(inst.system);
    LogNConfig cfg;
    cfg.c_spd = 3;
    LogNEngine a(sys, cfg), b(sys, cfg);
    for (const Update& u : inst.stream) {
      const StepReport ra = a.Step(u);
      const StepReport rb = b.Step(u);
      CHECK(ra.insertion_recourse == rb.insertion_recourse);
      CHECK(ra.deletion_recourse == rb.deletion_recourse);
      CHECK(ra.ds_ops == rb.ds_ops);
      CHECK(ra.added == rb.added);
    }
    CHECK(a.foreground().Dump() == b.foreground().Dump());
  }

  TEST_CASE("output always covers the live elements") {
    const Instance inst = testing::Churn(80, 20, 2, 1000, 5);
    const SetSystem& sys = inst.system;
    LogNConfig cfg;
    cfg.c_spd = 1;
    LogNEngine engine(testing::Share(sys), cfg);
    for (const Update& u : inst.stream) {
      engine.Step(u);
      REQUIRE(OutputCovers(engine, sys));
    }
  }

  TEST_CASE("without de-amortization removals are charged at once") {
    const Instance inst = testing::Churn(100, 30, 3, 500, 4);
    LogNConfig cfg;
    cfg.c_spd = 3;
    cfg.deamortize = false;
    LogNEngine engine(testing::Share(inst.system), cfg);
    for (const Update& u : inst.stream) {
      engine.Step(u);
      CHECK(engine.OutputSize() >= engine.foreground().NumSets());
    }
    for (int i = 0; i < 5000 && !engine.Quiescent(); ++i) engine.Step({Op::kIdle, -1});
    if (engine.Quiescent()) CHECK(engine.OutputSize() == engine.foreground().NumSets());
  }
}

}  // namespace
}  // namespace dsc
