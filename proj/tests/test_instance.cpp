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

#include "doctest.h"
#include "dsc/instance.hpp"
#include "test_util.hpp"

namespace dsc {
namespace {

const char* kCycleFile =
    "dsc 1\n"
    "universe 4\n"
    "sets 4\n"
    "set 0: 0 1\n"
    "set 1: 1 2\n"
    "set 2: 2 3\n"
    "set 3: 0 3\n"
    "stream\n"
    "+ 0\n"
    "+ 1\n"
    "# comment line\n"
    "+ 2\n"
    "+ 3\n";

void ReplayLiveBound(const Instance& inst, std::int64_t bound) {
  std::vector<bool> live(inst.system.universe_size(), false);
  std::int64_t count = 0;
  for (const Update& u : inst.stream) {
    if (u.op == Op::kInsert) {
      REQUIRE_FALSE(live[u.element]);
      live[u.element] = true;
      ++count;
    } else {
      REQUIRE(live[u.element]);
      live[u.element] = false;
      --count;
    }
    REQUIRE(count <= bound);
  }
}

TEST_SUITE("instance") {
  TEST_CASE("parse the smallest well-formed instance") {
    const Instance inst = ParseInstance(kCycleFile);
    CHECK(inst.system.universe_size() == 4);
    CHECK(inst.system.num_sets() == 4);
    CHECK(inst.system.f_max() == 2);
    REQUIRE(inst.stream.size() == 4);
    for (ElementId e = 0; e < 4; ++e) CHECK(inst.stream[e] == Update{Op::kInsert, e});
    CHECK(inst.system.n_cap() == 4);
  }

  TEST_CASE("incident lists are sorted and exact") {
    const SetSystem sys = testing::CycleSystem();
    for (ElementId e = 0; e < sys.universe_size(); ++e) {
      auto inc = sys.incident(e);
      CHECK(std::is_sorted(inc.begin(), inc.end()));
      for (SetId s = 0; s < sys.num_sets(); ++s) {
        const bool listed = std::find(inc.begin(), inc.end(), s) != inc.end();
        CHECK(listed == sys.Contains(s, e));
      }
    }
  }

  TEST_CASE("double insert is rejected with its step") {
    const std::string text =
        "dsc 1\nuniverse 2\nsets 1\nset 0: 0 1\nstream\n+ 0\n+ 0\n";
    try {
      ParseInstance(text);
      FAIL("expected an error");
    } catch (const InstanceError& e) {
      CHECK(std::string(e.what()).find("insert of live element at step 2") != std::string::npos);
    }
  }

  TEST_CASE("delete of a dormant element is rejected") {
    CHECK_THROWS_AS(ParseInstance("dsc 1\nuniverse 2\nsets 1\nset 0: 0 1\nstream\n- 1\n"),
                    InstanceError);
  }

  TEST_CASE("empty stream section") {
    const Instance inst = ParseInstance("dsc 1\nuniverse 2\nsets 1\nset 0: 0 1\nstream\n");
    CHECK(inst.stream.empty());
  }

  TEST_CASE("malformed lines report their line number") {
    try {
      ParseInstance("dsc 1\nuniverse 2\nsets 1\nset 0: 0 x\nstream\n");
      FAIL("expected an error");
    } catch (const InstanceError& e) {
      CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(ParseInstance("dsc 2\n"), InstanceError);
    CHECK_THROWS_AS(ParseInstance("dsc 1\nuniverse 2\nsets 1\nset 0: 0 5\nstream\n"),
                    InstanceError);
    CHECK_THROWS_AS(ParseInstance("dsc 1\nuniverse 2\nsets 1\nset 0: 0 1\nstream\n* 0\n"),
                    InstanceError);
  }

  TEST_CASE("element outside every set is rejected") {
    CHECK_THROWS_AS(ParseInstance("dsc 1\nuniverse 3\nsets 1\nset 0: 0 1\nstream\n"),
                    InstanceError);
  }

  TEST_CASE("duplicate members are dropped with a warning") {
    const Instance inst = ParseInstance("dsc 1\nuniverse 2\nsets 1\nset 0: 1 0 1\nstream\n");
    CHECK(inst.warnings.size() == 1);
    const auto s = inst.system.set(0);
    CHECK(std::vector<ElementId>(s.begin(), s.end()) == std::vector<ElementId>{0, 1});
  }

  TEST_CASE("n_cap is enforced on replay") {
    const std::string text = "dsc 1\nuniverse 3\nsets 1\nset 0: 0 1 2\nstream\n+ 0\n+ 1\n";
    CHECK_NOTHROW(ParseInstance(text, 2));
    CHECK_THROWS_AS(ParseInstance(text, 1), InstanceError);
  }

  TEST_CASE("generator is deterministic") {
    WorkloadParams p;
    p.universe_size = 100;
    p.num_sets = 30;
    p.freq = 3;
    p.steps = 100;
    p.pattern = Pattern::kInsertOnly;
    p.seed = 7;
    const Instance a = GenerateWorkload(p);
    const Instance b = GenerateWorkload(p);
    CHECK(SerializeInstance(a.system, a.stream) == SerializeInstance(b.system, b.stream));
    p.seed = 8;
    const Instance c = GenerateWorkload(p);
    CHECK(SerializeInstance(a.system, a.stream) != SerializeInstance(c.system, c.stream));
  }

  TEST_CASE("insert-only inserts distinct elements") {
    WorkloadParams p;
    p.universe_size = 50;
    p.num_sets = 10;
    p.steps = 50;
    p.pattern = Pattern::kInsertOnly;
    const Instance inst = GenerateWorkload(p);
    CHECK(inst.stream.size() == 50);
    ReplayLiveBound(inst, 50);
  }

  TEST_CASE("sliding window never exceeds its width") {
    WorkloadParams p;
    p.universe_size = 10;
    p.num_sets = 4;
    p.freq = 2;
    p.steps = 20;
    p.pattern = Pattern::kSlidingWindow;
    p.seed = 1;
    const Instance inst = GenerateWorkload(p);
    CHECK(inst.stream.size() == 20);
    ReplayLiveBound(inst, 5);
  }

  TEST_CASE("churn streams round-trip through the file format") {
    for (std::uint64_t seed : {1u, 3u, 9u}) {
      const Instance inst = testing::Churn(50, 20, 4, 500, seed);
      const std::string text = SerializeInstance(inst.system, inst.stream);
      const Instance back = ParseInstance(text);
      CHECK(back.system == inst.system);
      CHECK(back.stream == inst.stream);
      CHECK(SerializeInstance(back.system, back.stream) == text);
      CHECK(inst.system.f_max() <= 4);
    }
  }

  TEST_CASE("churn forces the only possible move") {
    const Instance inst = testing::Churn(5, 3, 2, 200, 2);
    // The first step can only be an insert.
    CHECK(inst.stream.front().op == Op::kInsert);
    ReplayLiveBound(inst, 5);
  }

  TEST_CASE("generator rejects infeasible parameters") {
    WorkloadParams p;
    p.num_sets = 2;
    p.freq = 3;
    CHECK_THROWS_AS(GenerateWorkload(p), InstanceError);
    p.freq = 0;
    CHECK_THROWS_AS(GenerateWorkload(p), InstanceError);
  }

  TEST_CASE("pattern names round-trip") {
    for (Pattern p : {Pattern::kInsertOnly, Pattern::kSlidingWindow, Pattern::kRandomChurn}) {
      CHECK(ParsePattern(PatternName(p)) == p);
    }
    CHECK_THROWS_AS(ParsePattern("bogus"), InstanceError);
  }
}

}  // namespace
}  // namespace dsc
