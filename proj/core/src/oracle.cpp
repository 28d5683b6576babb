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


#include "dsc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "dsc/hierarchy.hpp"
#include "dsc/levels.hpp"
#include "dsc/primal_dual.hpp"

namespace dsc {
namespace {

using Mask = std::uint64_t;

class BranchAndBound {
 public:
  BranchAndBound(std::vector<std::pair<SetId, Mask>> sets, int n)
      : sets_(std::move(sets)), n_(n), by_elem_(n) {
    for (int i = 0; i < static_cast<int>(sets_.size()); ++i) {
      for (Mask m = sets_[i].second; m != 0; m &= m - 1) {
        by_elem_[std::countr_zero(m)].push_back(i);
      }
    }
  }

  void Solve(const std::vector<int>& initial) {
    best_ = initial;
    std::vector<int> chosen;
    Search(Full(), chosen);
  }

  const std::vector<int>& best() const { return best_; }

 private:
  Mask Full() const { return n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1; }

  void Search(Mask uncovered, std::vector<int>& chosen) {
    if (uncovered == 0) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    int widest = 0;
    int pivot = -1;
    std::size_t pivot_deg = 0;
    for (Mask m = uncovered; m != 0; m &= m - 1) {
      const int e = std::countr_zero(m);
      const std::size_t deg = by_elem_[e].size();
      if (pivot < 0 || deg < pivot_deg) {
        pivot = e;
        pivot_deg = deg;
      }
    }
    for (const auto& [s, mask] : sets_) {
      widest = std::max(widest, std::popcount(mask & uncovered));
    }
    const std::size_t need =
        (static_cast<std::size_t>(std::popcount(uncovered)) + widest - 1) / widest;
    if (chosen.size() + need >= best_.size()) return;
    for (int i : by_elem_[pivot]) {
      chosen.push_back(i);
      Search(uncovered & ~sets_[i].second, chosen);
      chosen.pop_back();
      if (chosen.size() + need >= best_.size()) return;
    }
  }

  std::vector<std::pair<SetId, Mask>> sets_;
  int n_;
  std::vector<std::vector<int>> by_elem_;
  std::vector<int> best_;
};

// Indexes of sets_ chosen by plain greedy over masks; an initial incumbent.
std::vector<int> GreedyMasks(const std::vector<std::pair<SetId, Mask>>& sets, Mask full) {
  std::vector<int> out;
  Mask uncovered = full;
  while (uncovered != 0) {
    int best = -1;
    int gain = 0;
    for (int i = 0; i < static_cast<int>(sets.size()); ++i) {
      const int g = std::popcount(sets[i].second & uncovered);
      if (g > gain) {
        gain = g;
        best = i;
      }
    }
    out.push_back(best);
    uncovered &= ~sets[best].second;
  }
  return out;
}

}  // namespace

ExactCover ExactOpt(const SetSystem& sys, std::span<const ElementId> live, std::int64_t cap) {
  const auto n = static_cast<std::int64_t>(live.size());
  if (n > cap || n > 64) {
    throw OracleError("exact oracle: " + std::to_string(n) + " live elements exceed cap " +
                      std::to_string(std::min<std::int64_t>(cap, 64)));
  }
  ExactCover out;
  if (n == 0) return out;
  std::vector<ElementId> elems(live.begin(), live.end());
  std::sort(elems.begin(), elems.end());

  // Restrict every set to the live elements; identical masks keep the
  // smallest id.
  std::vector<std::pair<Mask, SetId>> masks;
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) {
    const ElementId e = elems[i];
    if (e < 0 || e >= sys.universe_size()) {
      throw OracleError("exact oracle: element " + std::to_string(e) + " out of range");
    }
    if (sys.incident(e).empty()) {
      throw OracleError("exact oracle: element " + std::to_string(e) + " is in no set");
    }
  }
  std::vector<Mask> by_set(sys.num_sets(), 0);
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) {
    for (SetId s : sys.incident(elems[i])) by_set[s] |= Mask{1} << i;
  }
  std::vector<std::pair<SetId, Mask>> sets;
  {
    std::vector<std::pair<Mask, SetId>> uniq;
    for (SetId s = 0; s < sys.num_sets(); ++s) {
      if (by_set[s] != 0) uniq.push_back({by_set[s], s});
    }
    std::sort(uniq.begin(), uniq.end());
    for (std::size_t i = 0; i < uniq.size(); ++i) {
      if (i > 0 && uniq[i].first == uniq[i - 1].first) continue;
      sets.push_back({uniq[i].second, uniq[i].first});
    }
    std::sort(sets.begin(), sets.end());
  }

  const Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  BranchAndBound bb(sets, static_cast<int>(n));
  bb.Solve(GreedyMasks(sets, full));
  for (int i : bb.best()) out.witness.push_back(sets[i].first);
  std::sort(out.witness.begin(), out.witness.end());
  out.size = static_cast<std::int64_t>(out.witness.size());
  return out;
}

std::vector<GreedyPick> OfflineGreedy(const SetSystem& sys, std::span<const ElementId> live,
                                      Level max_level) {
  std::vector<char> uncovered(sys.universe_size(), 0);
  std::vector<std::int64_t> gain(sys.num_sets(), 0);
  std::int64_t left = 0;
  for (ElementId e : live) {
    if (uncovered[e]) continue;
    uncovered[e] = 1;
    ++left;
    for (SetId s : sys.incident(e)) ++gain[s];
  }
  std::vector<GreedyPick> picks;
  Level p = max_level + 1;
  while (left > 0) {
    SetId best = 0;
    for (SetId s = 1; s < sys.num_sets(); ++s) {
      if (gain[s] > gain[best]) best = s;
    }
    GreedyPick pick;
    pick.set = best;
    for (ElementId e : sys.set(best)) {
      if (!uncovered[e]) continue;
      pick.coverage.push_back(e);
      uncovered[e] = 0;
      --left;
      for (SetId s : sys.incident(e)) --gain[s];
    }
    pick.level = std::min(p, FloorLog15(static_cast<std::int64_t>(pick.coverage.size())));
    p = pick.level;
    picks.push_back(std::move(pick));
  }
  return picks;
}

std::vector<ElementId> LiveElements(const std::vector<bool>& live) {
  std::vector<ElementId> out;
  for (ElementId e = 0; e < static_cast<ElementId>(live.size()); ++e) {
    if (live[e]) out.push_back(e);
  }
  return out;
}

AuditReport ExtendedAudit(const LogNEngine& engine, Level k) {
  AuditReport rep;
  auto ext = engine.ExtendThread(k);
  rep.Add("thread_exists", ext.has_value(), "no thread at level " + std::to_string(k));
  if (!ext) return rep;
  HierarchyAuditOptions h;
  h.tidy = Ratio{1, 5};
  h.check_stable = false;
  h.max_check_level = k;
  rep.Merge(AuditHierarchy(engine.system(), ext->solution, h), "extension.");
  return rep;
}

AuditReport ExtendedAudit(const FEngine& engine, Level k) {
  AuditReport rep;
  auto ext = engine.ExtendThread(k);
  rep.Add("thread_exists", ext.has_value(), "no thread at level " + std::to_string(k));
  if (!ext) return rep;
  PrimalDualAuditOptions o;
  o.tidy = Ratio{1, 10};
  o.max_check_level = k;
  const AuditReport full = AuditPrimalDual(engine.system(), ext->solution, o);
  // Tightness depends on foreground duals above k, which the partial
  // solution does not hold.
  for (const CheckResult& c : full.checks()) {
    if (c.name == "tight_sets") continue;
    rep.Add("extension." + c.name, c.passed, c.witness);
  }
  return rep;
}

}  // namespace dsc
