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


#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "dsc/engine_logn.hpp"
#include "dsc/hierarchy.hpp"
#include "dsc/levels.hpp"
#include "test_util.hpp"

namespace dsc {
namespace {

// Elements 0..7; sets chosen so several levels are reachable.
SetSystem EightSystem() {
  return SetSystem(8, {{0}, {0}, {1, 2}, {0}, {3, 4}, {0, 1, 2, 3}, {4, 5, 6}, {5, 6, 7}});
}

bool Passed(const AuditReport& rep, const std::string& name) {
  const CheckResult* c = rep.Find(name);
  REQUIRE_MESSAGE(c != nullptr, "missing check " << name);
  return c->passed;
}

// |A_k ∩ s| < 1.5^(k+1) for every set in the family and every level,
// counted directly from element lookups.
bool BruteForceStable(const SetSystem& sys, const HierarchicalSolution& sol, Level max_k) {
  for (SetId s = 0; s < sys.num_sets(); ++s) {
    for (Level k = 0; k <= max_k; ++k) {
      std::int64_t active = 0;
      for (ElementId e : sys.set(s)) {
        const auto loc = sol.Find(e);
        if (loc && loc->live && loc->node.lev <= k && loc->node.plev > k) ++active;
      }
      if (static_cast<double>(active) >= std::pow(1.5, k + 1) - 1e-9) return false;
    }
  }
  return true;
}

TEST_SUITE("hierarchy") {
  TEST_CASE("first assignment updates the tallies") {
    const SetSystem sys = EightSystem();
    HierarchicalSolution sol(4);
    sol.AddSet(3, 0);
    sol.Assign(0, 3, 0, 0);
    const LevelStats st = sol.Stats();
    CHECK(st.covered[0] == 1);
    CHECK(st.live[0] == 1);
    // plev = lev = 0 makes the element passive at every level.
    CHECK(st.passive[0] == 1);
    CHECK(st.active[0] == 0);

    HierarchicalSolution act(4);
    act.AddSet(3, 0);
    act.Assign(0, 3, 0, 2);
    CHECK(act.Stats().active[0] == 1);
    CHECK(act.Stats().active[1] == 1);
    CHECK(act.Stats().active[2] == 0);
  }

  TEST_CASE("assignment preconditions") {
    HierarchicalSolution sol(4);
    sol.set_validate(true);
    sol.AddSet(5, 2);
    sol.Assign(0, 5, 2, 2);
    CHECK_THROWS_AS(sol.Assign(0, 5, 2, 2), StructureError);
    CHECK_THROWS_AS(sol.Assign(1, 5, 2, 1), StructureError);
    CHECK_THROWS_AS(sol.Assign(1, 4, 1, 1), StructureError);
    CHECK_THROWS_AS(sol.AddSet(5, 1), StructureError);
  }

  TEST_CASE("mark dormant freezes plev at lev") {
    HierarchicalSolution sol(5);
    sol.AddSet(5, 2);
    sol.Assign(1, 5, 2, 4);
    sol.MarkDormant(1);
    const auto loc = sol.Find(1);
    REQUIRE(loc.has_value());
    CHECK_FALSE(loc->live);
    CHECK(loc->node.plev == 2);
    CHECK_THROWS_AS(sol.MarkDormant(1), StructureError);
    CHECK_THROWS_AS(sol.MarkDormant(7), StructureError);
  }

  TEST_CASE("dormant passive element leaves the passive tally") {
    HierarchicalSolution sol(5);
    sol.AddSet(5, 1);
    sol.Assign(0, 5, 1, 1);
    sol.Assign(1, 5, 1, 3);
    const LevelStats before = sol.Stats();
    sol.MarkDormant(0);
    const LevelStats after = sol.Stats();
    for (Level k = 1; k < 5; ++k) {
      CHECK(after.passive[k] == before.passive[k] - 1);
      CHECK(after.dormant[k] == before.dormant[k] + 1);
    }
    CHECK(after == sol.RecomputeStats());
  }

  TEST_CASE("highest covering set breaks ties by id") {
    const SetSystem sys(2, {{0}, {0}, {0}, {0}, {0}, {0}, {0}, {0, 1}});
    HierarchicalSolution sol(5);
    sol.AddSet(1, 3);
    sol.AddSet(7, 3);
    sol.AddSet(4, 1);
    CHECK(sol.HighestCoveringSet(sys, 0) == std::optional<SetId>(1));
    HierarchicalSolution empty(5);
    CHECK_FALSE(empty.HighestCoveringSet(sys, 0).has_value());
    HierarchicalSolution one(5);
    one.AddSet(2, 0);
    CHECK(one.HighestCoveringSet(sys, 0) == std::optional<SetId>(2));
  }

  TEST_CASE("splice replaces low levels and merges level k+1") {
    // target {0:{s1}, 1:{s2}}, source {0:{s3}, 1:{s4}}, k = 0.
    const SetSystem sys = EightSystem();
    HierarchicalSolution target(4), source(4);
    target.AddSet(1, 0);
    target.Assign(0, 1, 0, 1);
    target.AddSet(2, 1);
    target.Assign(1, 2, 1, 1);
    target.Assign(2, 2, 1, 1);
    source.AddSet(3, 0);
    source.Assign(0, 3, 0, 1);
    source.AddSet(4, 1);
    source.Assign(3, 4, 1, 1);
    source.Assign(4, 4, 1, 1);
    const auto removed = SpliceLevels(target, source, 0);
    REQUIRE(removed.size() == 1);
    CHECK(removed[0].sets.size() == 1);
    CHECK(removed[0].sets.contains(1));
    CHECK(target.SetLevel(3) == std::optional<Level>(0));
    CHECK(target.SetLevel(2) == std::optional<Level>(1));
    CHECK(target.SetLevel(4) == std::optional<Level>(1));
    CHECK_FALSE(target.ContainsSet(1));
    CHECK(target.NumSets() == 3);
    CHECK(target.Stats() == target.RecomputeStats());
    CHECK(source.NumSets() == 0);
  }

  TEST_CASE("splice with an empty source drops the low levels") {
    HierarchicalSolution target(4), source(4);
    target.AddSet(1, 0);
    target.Assign(0, 1, 0, 0);
    target.MarkDormant(0);
    SpliceLevels(target, source, 0);
    CHECK(target.NumSets() == 0);
  }

  TEST_CASE("splice rejects a set on both sides of the boundary") {
    HierarchicalSolution target(4), source(4);
    target.AddSet(2, 1);
    target.Assign(1, 2, 1, 1);
    target.Assign(2, 2, 1, 1);
    source.AddSet(2, 1);
    CHECK_THROWS_AS(SpliceLevels(target, source, 0), StructureError);
  }

  TEST_CASE("audit of an empty solution passes") {
    const SetSystem sys = EightSystem();
    HierarchicalSolution sol(4);
    std::vector<bool> live(8, false);
    HierarchyAuditOptions o;
    o.live = &live;
    o.tidy = Ratio{1, 2};
    CHECK(AuditHierarchy(sys, sol, o).ok());
  }

  TEST_CASE("tidy fails when passive exceeds theta times active") {
    // |A_2| = 4, |P_2| = 3, theta = 1/2.
    const SetSystem sys = EightSystem();
    HierarchicalSolution sol(5);
    sol.AddSet(5, 2);
    for (ElementId e : {0, 1, 2, 3}) sol.Assign(e, 5, 2, 4);
    sol.AddSet(6, 2);
    for (ElementId e : {4, 5, 6}) sol.Assign(e, 6, 2, 2);
    HierarchyAuditOptions o;
    o.tidy = Ratio{1, 2};
    o.check_stable = false;
    const AuditReport rep = AuditHierarchy(sys, sol, o);
    CHECK_FALSE(Passed(rep, "tidy"));
    CHECK(rep.Find("tidy")->witness.find("level 2") != std::string::npos);
    o.tidy = Ratio{3, 4};
    CHECK(Passed(AuditHierarchy(sys, sol, o), "tidy"));
  }

  TEST_CASE("level invariant and feasibility witnesses") {
    const SetSystem sys = EightSystem();
    HierarchicalSolution sol(5);
    sol.AddSet(2, 2);  // two elements cannot support level 2
    sol.Assign(1, 2, 2, 2);
    sol.Assign(2, 2, 2, 2);
    std::vector<bool> live(8, false);
    live[1] = live[2] = live[7] = true;
    HierarchyAuditOptions o;
    o.live = &live;
    const AuditReport rep = AuditHierarchy(sys, sol, o);
    CHECK_FALSE(Passed(rep, "level_invariant"));
    CHECK_FALSE(Passed(rep, "feasibility"));
    CHECK(rep.Find("feasibility")->witness.find("7") != std::string::npos);
  }

  TEST_CASE("nonempty coverage is required") {
    const SetSystem sys = EightSystem();
    HierarchicalSolution sol(4);
    sol.AddSet(0, 0);
    CHECK_FALSE(Passed(AuditHierarchy(sys, sol, {}), "nonempty_coverage"));
  }

  TEST_CASE("stable check matches brute force on engine foregrounds") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const Instance inst = testing::Churn(60, 20, 3, 600, seed);
      auto sys = testing::Share(inst.system);
      LogNConfig cfg;
      cfg.c_spd = 2;
      LogNEngine engine(sys, cfg);
      for (std::size_t i = 0; i < inst.stream.size(); ++i) {
        engine.Step(inst.stream[i]);
        if (i % 25 != 0) continue;
        HierarchyAuditOptions o;
        o.check_stable = true;
        const AuditReport rep = AuditHierarchy(*sys, engine.foreground(), o);
        const Level top = engine.foreground().num_levels() - 2;
        CHECK(Passed(rep, "stable") == BruteForceStable(*sys, engine.foreground(), top));
        CHECK(engine.foreground().Stats() == engine.foreground().RecomputeStats());
      }
    }
  }

  TEST_CASE("stable fails on a crowded low level") {
    // Three active elements of set 5 at level 0: 3 >= 1.5.
    const SetSystem sys = EightSystem();
    HierarchicalSolution sol(5);
    sol.AddSet(0, 0);
    sol.Assign(0, 0, 0, 3);
    sol.AddSet(2, 0);
    sol.Assign(1, 2, 0, 3);
    sol.Assign(2, 2, 0, 3);
    HierarchyAuditOptions o;
    CHECK_FALSE(Passed(AuditHierarchy(sys, sol, o), "stable"));
    CHECK_FALSE(BruteForceStable(sys, sol, 3));
  }

  TEST_CASE("tallies survive random operation sequences") {
    const Instance inst = testing::Churn(40, 12, 3, 1, 5);
    const SetSystem& sys = inst.system;
    std::mt19937_64 rng(17);
    for (int round = 0; round < 20; ++round) {
      HierarchicalSolution sol(6);
      std::vector<int> state(sys.universe_size(), 0);  // 0 none, 1 live, 2 dormant
      for (int op = 0; op < 200; ++op) {
        const auto e = static_cast<ElementId>(rng() % sys.universe_size());
        if (state[e] == 0) {
          const SetId s = sys.incident(e)[rng() % sys.incident(e).size()];
          Level lev = sol.SetLevel(s).value_or(static_cast<Level>(rng() % 4));
          if (!sol.ContainsSet(s)) sol.AddSet(s, lev);
          sol.Assign(e, s, lev, lev + static_cast<Level>(rng() % 2));
          state[e] = 1;
        } else if (state[e] == 1) {
          sol.MarkDormant(e);
          state[e] = 2;
        } else {
          sol.Revive(e, sol.Find(e)->node.lev);
          state[e] = 1;
        }
        REQUIRE(sol.Stats() == sol.RecomputeStats());
      }
    }
  }

  TEST_CASE("dump is canonical") {
    HierarchicalSolution sol(4);
    sol.AddSet(2, 1);
    sol.Assign(2, 2, 1, 2);
    sol.Assign(1, 2, 1, 1);
    sol.MarkDormant(2);
    CHECK(sol.Dump() == "level 1\n  set 2 cov 2: 1@1 ~2@1\n");
  }

  TEST_CASE("level helpers") {
    CHECK(FloorLog15(1) == 0);
    CHECK(FloorLog15(2) == 1);
    CHECK(FloorLog15(3) == 2);
    CHECK(FloorLog15(4) == 3);
    CHECK(FloorLog15(5) == 3);
    CHECK(FloorLog15(6) == 4);
    for (std::int64_t c = 1; c < 5000; ++c) {
      const Level l = FloorLog15(c);
      CHECK(std::pow(1.5, l) <= static_cast<double>(c) + 1e-9);
      CHECK(std::pow(1.5, l + 1) > static_cast<double>(c) + 1e-9);
    }
  }
}

}  // namespace
}  // namespace dsc
