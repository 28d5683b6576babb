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
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "dsc/engine_f.hpp"
#include "dsc/engine_logn.hpp"
#include "dsc/levels.hpp"
#include "dsc/oracle.hpp"
#include "test_util.hpp"

namespace dsc {
namespace {

bool Covers(const SetSystem& sys, const std::vector<SetId>& sets,
            const std::vector<ElementId>& live) {
  for (ElementId e : live) {
    bool hit = false;
    for (SetId s : sets) hit = hit || sys.Contains(s, e);
    if (!hit) return false;
  }
  return true;
}

std::vector<ElementId> SubUniverse(const HierarchicalSolution& f, Level k) {
  std::vector<ElementId> out;
  for (Level l = 0; l <= k; ++l) {
    for (const auto& [e, node] : f.level(l).live) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Random system on `n` elements with `m` sets, each element in 1..3 sets.
SetSystem RandomSystem(std::mt19937_64& rng, int n, int m) {
  std::vector<std::vector<ElementId>> sets(m);
  for (ElementId e = 0; e < n; ++e) {
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) sets[rng() % m].push_back(e);
  }
  return SetSystem(n, sets);
}

TEST_SUITE("oracle") {
  TEST_CASE("exact cover of the 4-cycle") {
    const SetSystem sys = testing::CycleSystem();
    const std::vector<ElementId> live{0, 1, 2, 3};
    const ExactCover c = ExactOpt(sys, live);
    CHECK(c.size == 2);
    CHECK(c.witness == std::vector<SetId>{0, 2});
    CHECK(testing::BruteForceOpt(sys, live) == 2);
  }

  TEST_CASE("exact cover trivial cases") {
    const SetSystem sys = testing::CycleSystem();
    CHECK(ExactOpt(sys, std::vector<ElementId>{}).size == 0);
    const SetSystem two(3, {{1}, {1, 2}, {0}});
    const ExactCover c = ExactOpt(two, std::vector<ElementId>{1});
    CHECK(c.size == 1);
    CHECK(c.witness == std::vector<SetId>{0});
  }

  TEST_CASE("exact oracle enforces its cap") {
    const Instance inst = testing::Churn(60, 20, 3, 1, 1);
    std::vector<ElementId> live(41);
    for (int i = 0; i < 41; ++i) live[i] = i;
    CHECK_THROWS_AS(ExactOpt(inst.system, live), OracleError);
    live.resize(10);
    CHECK_THROWS_AS(ExactOpt(inst.system, live, 9), OracleError);
    CHECK_NOTHROW(ExactOpt(inst.system, live, 10));
  }

  TEST_CASE("exact oracle agrees with exhaustive search") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 150; ++round) {
      const int n = 1 + static_cast<int>(rng() % 12);
      const int m = 1 + static_cast<int>(rng() % 14);
      const SetSystem sys = RandomSystem(rng, n, m);
      std::vector<ElementId> live;
      for (ElementId e = 0; e < n; ++e) {
        if (rng() % 4 != 0) live.push_back(e);
      }
      const ExactCover c = ExactOpt(sys, live);
      CHECK(c.size == testing::BruteForceOpt(sys, live));
      CHECK(static_cast<std::int64_t>(c.witness.size()) == c.size);
      CHECK(std::is_sorted(c.witness.begin(), c.witness.end()));
      CHECK(Covers(sys, c.witness, live));
      CHECK(ExactOpt(sys, live).witness == c.witness);
    }
  }

  TEST_CASE("offline greedy on the 4-cycle") {
    const SetSystem sys = testing::CycleSystem();
    const auto picks = OfflineGreedy(sys, std::vector<ElementId>{0, 1, 2, 3}, sys.max_level());
    REQUIRE(picks.size() == 2);
    CHECK(picks[0] == GreedyPick{0, {0, 1}, 1});
    CHECK(picks[1] == GreedyPick{2, {2, 3}, 1});
    CHECK(OfflineGreedy(sys, std::vector<ElementId>{}, sys.max_level()).empty());
  }

  TEST_CASE("offline greedy on a single element") {
    const SetSystem sys(6, {{0, 1, 2, 3, 4}, {5}, {5, 0}});
    const auto picks = OfflineGreedy(sys, std::vector<ElementId>{5}, sys.max_level());
    REQUIRE(picks.size() == 1);
    CHECK(picks[0].set == 1);
    CHECK(picks[0].coverage == std::vector<ElementId>{5});
    CHECK(picks[0].level == 0);
  }

  TEST_CASE("offline greedy levels never rise and respect the cap") {
    const Instance inst = testing::Churn(300, 40, 4, 1, 2);
    std::vector<ElementId> all(300);
    for (int i = 0; i < 300; ++i) all[i] = i;
    for (Level cap : {0, 2, 5, inst.system.max_level()}) {
      const auto picks = OfflineGreedy(inst.system, all, cap);
      Level prev = cap + 1;
      std::size_t covered = 0;
      for (const auto& p : picks) {
        CHECK(p.level <= prev);
        CHECK(p.level <= FloorLog15(static_cast<std::int64_t>(p.coverage.size())));
        prev = p.level;
        covered += p.coverage.size();
      }
      CHECK(covered == 300);
    }
  }

  TEST_CASE("offline greedy stays within the harmonic bound") {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 100; ++round) {
      const int n = 1 + static_cast<int>(rng() % 12);
      const int m = 1 + static_cast<int>(rng() % 12);
      const SetSystem sys = RandomSystem(rng, n, m);
      std::vector<ElementId> live(n);
      for (int i = 0; i < n; ++i) live[i] = i;
      double h = 0;
      for (int i = 1; i <= n; ++i) h += 1.0 / i;
      const auto picks = OfflineGreedy(sys, live, sys.max_level());
      CHECK(static_cast<double>(picks.size()) <=
            h * static_cast<double>(ExactOpt(sys, live).size) + 1e-9);
    }
  }

  TEST_CASE("fresh thread on a static snapshot extends to the offline greedy") {
    const Instance inst = testing::Churn(120, 30, 3, 1, 4);
    auto sys = testing::Share(inst.system);
    LogNConfig cfg;
    cfg.c_spd = 3;
    LogNEngine engine(sys, cfg);
    std::vector<ElementId> order(120);
    for (int i = 0; i < 120; ++i) order[i] = (i * 37) % 120;
    for (ElementId e : order) engine.Step({Op::kInsert, e});
    const std::int64_t last_update = engine.time();
    int compared = 0;
    for (int idle = 0; idle < 400 && compared < 20; ++idle) {
      engine.Step({Op::kIdle, -1});
      for (const ThreadSummary& ts : engine.Threads()) {
        if (ts.t_start <= last_update || ts.phase != Phase::kComputation) continue;
        const auto ext = engine.ExtendThread(ts.k);
        REQUIRE(ext.has_value());
        const auto expect = OfflineGreedy(*sys, SubUniverse(engine.foreground(), ts.k), ts.k);
        CHECK(ext->picks == expect);
        ++compared;
      }
    }
    CHECK(compared > 0);
  }

  TEST_CASE("extended audits pass for every running thread") {
    for (std::uint64_t seed : {1u, 2u}) {
      // Tidiness of the extension relies on default-speed threads; the
      // universe is large enough that upper levels are not base threads.
      const Instance inst = testing::Churn(1200, 240, 3, 1500, seed);
      auto sys = testing::Share(inst.system);
      LogNEngine logn(sys);
      FEngine f(sys);
      bool saw_background = false;
      for (std::size_t i = 0; i < inst.stream.size(); ++i) {
        logn.Step(inst.stream[i]);
        f.Step(inst.stream[i]);
        for (const ThreadSummary& ts : logn.Threads()) {
          saw_background = saw_background || !ts.base;
        }
        if (i % 25 != 0) continue;
        for (const ThreadSummary& ts : logn.Threads()) {
          const AuditReport rep = ExtendedAudit(logn, ts.k);
          CHECK_MESSAGE(rep.ok(), "logn t=" << logn.time() << " k=" << ts.k << " "
                                            << rep.ToString());
        }
        for (const ThreadSummary& ts : f.Threads()) {
          const AuditReport rep = ExtendedAudit(f, ts.k);
          CHECK_MESSAGE(rep.ok(), "f t=" << f.time() << " k=" << ts.k << " " << rep.ToString());
        }
      }
      CHECK(saw_background);
    }
  }

  TEST_CASE("extension of an empty sub-universe is empty") {
    const SetSystem sys = testing::CycleSystem();
    auto shared = testing::Share(sys);
    LogNEngine logn(shared);
    logn.Step({Op::kIdle, -1});
    const auto ext = logn.ExtendThread(0);
    if (ext) CHECK(ext->picks.empty());
    CHECK(ExtendedAudit(logn, 0).ok() == ext.has_value());
    CHECK_FALSE(ExtendedAudit(logn, 99).ok());
  }
}

}  // namespace
}  // namespace dsc
