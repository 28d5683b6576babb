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

#include "dsc/hierarchy.hpp"

#include <algorithm>
#include <string>

#include "dsc/levels.hpp"

namespace dsc {

namespace {

std::string Str(std::int64_t v) { return std::to_string(v); }

}  // namespace

HierarchicalSolution::HierarchicalSolution(Level num_levels, OpCounts* ops)
    : levels_(num_levels), ops_(ops) {
  for (LevelIndex& l : levels_) l.live_by_plev.assign(num_levels, 0);
}

HierarchicalSolution::LevelIndex& HierarchicalSolution::mut_level(Level l) {
  if (l < 0 || l >= num_levels()) {
    throw StructureError("level " + Str(l) + " out of range");
  }
  return levels_[l];
}

void HierarchicalSolution::AddSet(SetId s, Level lev) {
  LevelIndex& li = mut_level(lev);
  if (validate_ && ContainsSet(s)) {
    throw StructureError("set " + Str(s) + " already in the solution");
  }
  Count();
  if (!li.sets.emplace(s, 0).second) {
    throw StructureError("set " + Str(s) + " already at level " + Str(lev));
  }
}

std::optional<Level> HierarchicalSolution::SetLevel(SetId s) const {
  for (Level l = num_levels() - 1; l >= 0; --l) {
    Count();
    if (levels_[l].sets.contains(s)) return l;
  }
  return std::nullopt;
}

std::int64_t HierarchicalSolution::CoverageSize(SetId s, Level lev) const {
  Count();
  auto it = levels_[lev].sets.find(s);
  return it == levels_[lev].sets.end() ? 0 : it->second;
}

void HierarchicalSolution::Assign(ElementId e, SetId s, Level lev, Level plev) {
  if (plev < lev) {
    throw StructureError("plev " + Str(plev) + " below lev " + Str(lev) +
                         " for element " + Str(e));
  }
  if (plev >= num_levels()) {
    throw StructureError("plev " + Str(plev) + " out of range");
  }
  LevelIndex& li = mut_level(lev);
  Count();
  auto set_it = li.sets.find(s);
  if (set_it == li.sets.end()) {
    throw StructureError("set " + Str(s) + " not present at level " + Str(lev));
  }
  if (validate_ && Find(e).has_value()) {
    throw StructureError("element " + Str(e) + " already covered");
  }
  Count(2);
  if (li.dormant.contains(e) ||
      !li.live.emplace(e, ElementNode{lev, plev, s}).second) {
    throw StructureError("element " + Str(e) + " already covered");
  }
  ++set_it->second;
  ++li.live_by_plev[plev];
}

void HierarchicalSolution::MarkDormant(ElementId e) {
  auto loc = Find(e);
  if (!loc.has_value()) {
    throw StructureError("element " + Str(e) + " is not covered");
  }
  MarkDormantAt(e, loc->node.lev);
}

void HierarchicalSolution::MarkDormantAt(ElementId e, Level lev) {
  LevelIndex& li = mut_level(lev);
  Count();
  auto it = li.live.find(e);
  if (it == li.live.end()) {
    throw StructureError("element " + Str(e) +
                         " is not a live covered element at level " + Str(lev));
  }
  ElementNode node = it->second;
  --li.live_by_plev[node.plev];
  node.plev = node.lev;
  Count(2);
  li.live.erase(it);
  li.dormant.emplace(e, node);
}

void HierarchicalSolution::Revive(ElementId e, Level lev) {
  LevelIndex& li = mut_level(lev);
  Count();
  auto it = li.dormant.find(e);
  if (it == li.dormant.end()) {
    throw StructureError("element " + Str(e) +
                         " is not a dormant covered element at level " +
                         Str(lev));
  }
  ElementNode node = it->second;
  node.plev = node.lev;
  Count(2);
  li.dormant.erase(it);
  li.live.emplace(e, node);
  ++li.live_by_plev[node.plev];
}

std::optional<HierarchicalSolution::Located> HierarchicalSolution::Find(
    ElementId e) const {
  for (Level l = 0; l < num_levels(); ++l) {
    if (auto loc = FindAt(e, l)) return loc;
  }
  return std::nullopt;
}

std::optional<HierarchicalSolution::Located> HierarchicalSolution::FindAt(
    ElementId e, Level lev) const {
  const LevelIndex& li = levels_[lev];
  Count();
  if (auto it = li.live.find(e); it != li.live.end()) {
    return Located{it->second, true};
  }
  Count();
  if (auto it = li.dormant.find(e); it != li.dormant.end()) {
    return Located{it->second, false};
  }
  return std::nullopt;
}

std::optional<SetId> HierarchicalSolution::HighestCoveringSet(
    const SetSystem& sys, ElementId e) const {
  std::optional<SetId> best;
  Level best_level = -1;
  for (SetId s : sys.incident(e)) {
    const auto lev = SetLevel(s);
    if (lev.has_value() && *lev > best_level) {
      best = s;
      best_level = *lev;
    }
  }
  return best;
}

std::int64_t HierarchicalSolution::SubUniverseSize(Level k) const {
  std::int64_t total = 0;
  for (Level l = 0; l <= k && l < num_levels(); ++l) {
    total += static_cast<std::int64_t>(levels_[l].live.size());
  }
  return total;
}

std::int64_t HierarchicalSolution::NumSets() const {
  std::int64_t total = 0;
  for (const LevelIndex& li : levels_) total += li.sets.size();
  return total;
}

std::vector<SetId> HierarchicalSolution::Sets() const {
  std::vector<SetId> out;
  for (const LevelIndex& li : levels_) {
    for (const auto& [s, cov] : li.sets) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LevelStats HierarchicalSolution::Stats() const {
  const Level n = num_levels();
  LevelStats st;
  st.covered.assign(n, 0);
  st.live.assign(n, 0);
  st.active.assign(n, 0);
  st.passive.assign(n, 0);
  st.dormant.assign(n, 0);
  std::int64_t live = 0;
  std::int64_t dormant = 0;
  for (Level k = 0; k < n; ++k) {
    live += levels_[k].live.size();
    dormant += levels_[k].dormant.size();
    std::int64_t active = 0;
    for (Level l = 0; l <= k; ++l) {
      for (Level p = k + 1; p < n; ++p) active += levels_[l].live_by_plev[p];
    }
    st.live[k] = live;
    st.dormant[k] = dormant;
    st.covered[k] = live + dormant;
    st.active[k] = active;
    st.passive[k] = live - active;
  }
  return st;
}

LevelStats HierarchicalSolution::RecomputeStats() const {
  const Level n = num_levels();
  LevelStats st;
  st.covered.assign(n, 0);
  st.live.assign(n, 0);
  st.active.assign(n, 0);
  st.passive.assign(n, 0);
  st.dormant.assign(n, 0);
  for (Level k = 0; k < n; ++k) {
    for (Level l = 0; l <= k; ++l) {
      for (const auto& [e, node] : levels_[l].live) {
        ++st.live[k];
        ++st.covered[k];
        if (node.plev > k) {
          ++st.active[k];
        } else {
          ++st.passive[k];
        }
      }
      st.dormant[k] += levels_[l].dormant.size();
      st.covered[k] += levels_[l].dormant.size();
    }
  }
  return st;
}

std::string HierarchicalSolution::Dump() const {
  std::string out;
  for (Level l = 0; l < num_levels(); ++l) {
    const LevelIndex& li = levels_[l];
    if (li.sets.empty() && li.live.empty() && li.dormant.empty()) continue;
    out += "level " + Str(l) + "\n";
    for (const auto& [s, cov] : li.sets) {
      out += "  set " + Str(s) + " cov " + Str(cov) + ":";
      // Coverage listing in element order, dormant elements marked with '~'.
      std::vector<std::pair<ElementId, std::string>> members;
      for (const auto& [e, node] : li.live) {
        if (node.owner == s) members.emplace_back(e, Str(e) + "@" + Str(node.plev));
      }
      for (const auto& [e, node] : li.dormant) {
        if (node.owner == s) members.emplace_back(e, "~" + Str(e) + "@" + Str(node.plev));
      }
      std::sort(members.begin(), members.end());
      for (const auto& m : members) out += " " + m.second;
      out += "\n";
    }
  }
  return out;
}

std::vector<HierarchicalSolution::LevelIndex> SpliceLevels(
    HierarchicalSolution& target, HierarchicalSolution& source, Level k,
    bool validate) {
  const Level n = target.num_levels();
  if (source.num_levels() != n) {
    throw StructureError("splice between solutions of different heights");
  }
  if (k < 0 || k + 1 >= n) throw StructureError("splice level out of range");
  using LevelIndex = HierarchicalSolution::LevelIndex;

  LevelIndex& tgt_next = target.levels_[k + 1];
  LevelIndex& src_next = source.levels_[k + 1];
  if (validate) {
    for (Level l = 0; l <= k + 1; ++l) {
      for (const auto& [s, cov] : source.levels_[l].sets) {
        for (Level h = k + 1; h < n; ++h) {
          if (target.levels_[h].sets.contains(s)) {
            throw StructureError("duplicate set " + std::to_string(s) +
                                 " across the splice boundary");
          }
        }
      }
    }
  }
  // Level k+1: merge. Merging leaves colliding keys behind in the source.
  target.Count(3);
  tgt_next.sets.merge(src_next.sets);
  tgt_next.live.merge(src_next.live);
  tgt_next.dormant.merge(src_next.dormant);
  if (!src_next.sets.empty() || !src_next.live.empty() ||
      !src_next.dormant.empty()) {
    throw StructureError("duplicate key while merging level " +
                         std::to_string(k + 1));
  }
  for (Level p = 0; p < n; ++p) {
    tgt_next.live_by_plev[p] += src_next.live_by_plev[p];
    src_next.live_by_plev[p] = 0;
  }

  std::vector<LevelIndex> removed(k + 1);
  for (Level l = 0; l <= k; ++l) {
    target.Count(3);
    removed[l] = std::move(target.levels_[l]);
    target.levels_[l] = std::move(source.levels_[l]);
    source.levels_[l] = LevelIndex{};
    source.levels_[l].live_by_plev.assign(n, 0);
  }
  return removed;
}

AuditReport AuditHierarchy(const SetSystem& sys, const HierarchicalSolution& sol,
                           const HierarchyAuditOptions& opts) {
  AuditReport rep;
  const Level n = sol.num_levels();
  const std::int32_t U = sys.universe_size();

  // Flat snapshot: element -> (node, live).
  std::vector<int> seen(U, 0);
  std::vector<ElementNode> node_of(U);
  std::vector<char> live_of(U, 0);
  std::vector<std::int64_t> cov_count(sys.num_sets(), 0);
  std::vector<int> set_seen(sys.num_sets(), 0);
  std::vector<Level> set_level(sys.num_sets(), -1);

  bool dup_ok = true;
  std::string dup_w;
  for (Level l = 0; l < n; ++l) {
    for (const auto& [s, cov] : sol.level(l).sets) {
      if (s < 0 || s >= sys.num_sets()) {
        dup_ok = false;
        dup_w = "unknown set " + Str(s);
        continue;
      }
      if (++set_seen[s] > 1 && dup_ok) {
        dup_ok = false;
        dup_w = "set " + Str(s) + " appears at more than one level";
      }
      set_level[s] = l;
    }
  }
  rep.Add("no_duplicate_sets", dup_ok, dup_w);

  bool disjoint_ok = true, owner_ok = true, plev_ok = true, lev_ok = true;
  std::string disjoint_w, owner_w, plev_w, lev_w;
  for (Level l = 0; l < n; ++l) {
    for (int pass = 0; pass < 2; ++pass) {
      const auto& idx = pass == 0 ? sol.level(l).live : sol.level(l).dormant;
      for (const auto& [e, node] : idx) {
        if (e < 0 || e >= U) {
          disjoint_ok = false;
          disjoint_w = "unknown element " + Str(e);
          continue;
        }
        if (++seen[e] > 1 && disjoint_ok) {
          disjoint_ok = false;
          disjoint_w = "element " + Str(e) + " has more than one owner";
        }
        node_of[e] = node;
        live_of[e] = pass == 0;
        if (node.lev != l && lev_ok) {
          lev_ok = false;
          lev_w = "element " + Str(e) + " stored at level " + Str(l) +
                  " but lev " + Str(node.lev);
        }
        const SetId s = node.owner;
        const bool known = s >= 0 && s < sys.num_sets();
        if (known) ++cov_count[s];
        if (owner_ok && (!known || set_level[s] != node.lev || !sys.Contains(s, e))) {
          owner_ok = false;
          owner_w = "element " + Str(e) + " owner " + Str(s) +
                    " absent, at another level, or not containing it";
        }
        if (plev_ok && (node.plev < node.lev || (pass == 1 && node.plev != node.lev))) {
          plev_ok = false;
          plev_w = "element " + Str(e) + " lev " + Str(node.lev) + " plev " +
                   Str(node.plev) + (pass == 1 ? " (dormant)" : "");
        }
      }
    }
  }
  rep.Add("coverage_disjoint", disjoint_ok, disjoint_w);
  rep.Add("owner_consistent", owner_ok && lev_ok, owner_ok ? lev_w : owner_w);
  rep.Add("passive_level_invariant", plev_ok, plev_w);

  bool nonempty_ok = true, covsize_ok = true, level_inv_ok = true;
  std::string nonempty_w, covsize_w, level_inv_w;
  for (Level l = 0; l < n; ++l) {
    for (const auto& [s, cov] : sol.level(l).sets) {
      if (s < 0 || s >= sys.num_sets()) continue;
      if (cov_count[s] < 1 && nonempty_ok) {
        nonempty_ok = false;
        nonempty_w = "set " + Str(s) + " at level " + Str(l) + " covers nothing";
      }
      if (cov != cov_count[s] && covsize_ok) {
        covsize_ok = false;
        covsize_w = "set " + Str(s) + " records coverage " + Str(cov) +
                    " but owns " + Str(cov_count[s]);
      }
      if (!Pow15AtMost(l, cov_count[s]) && level_inv_ok) {
        level_inv_ok = false;
        level_inv_w = "set " + Str(s) + " at level " + Str(l) +
                      " with coverage " + Str(cov_count[s]);
      }
    }
  }
  rep.Add("nonempty_coverage", nonempty_ok, nonempty_w);
  rep.Add("coverage_size", covsize_ok, covsize_w);
  rep.Add("level_invariant", level_inv_ok, level_inv_w);

  const LevelStats st = sol.Stats();
  rep.Add("level_stats", st == sol.RecomputeStats(),
          "incremental tallies differ from recomputation");

  if (opts.live != nullptr) {
    const std::vector<bool>& live = *opts.live;
    bool status_ok = true;
    std::string status_w;
    bool feas_ok = true;
    std::string feas_w;
    for (ElementId e = 0; e < U; ++e) {
      if (seen[e] > 0 && static_cast<bool>(live_of[e]) != live[e] && status_ok) {
        status_ok = false;
        status_w = "element " + Str(e) + " indexed as " +
                   (live_of[e] ? "live" : "dormant") + " but is " +
                   (live[e] ? "live" : "dormant");
      }
      if (live[e] && seen[e] == 0 && feas_ok) {
        feas_ok = false;
        feas_w = "live element " + Str(e) + " uncovered";
      }
    }
    rep.Add("live_status", status_ok, status_w);
    if (opts.check_feasibility) rep.Add("feasibility", feas_ok, feas_w);
  }

  const Level top = opts.max_check_level >= 0 ? std::min(opts.max_check_level, n - 1)
                                               : n - 2;
  if (opts.tidy.has_value()) {
    bool ok = true;
    std::string w;
    for (Level k = 0; k <= top && ok; ++k) {
      const std::int64_t lazy = st.passive[k] + st.dormant[k];
      if (!opts.tidy->AtMostTimes(lazy, st.active[k])) {
        ok = false;
        w = "level " + Str(k) + ": passive " + Str(st.passive[k]) + " + dormant " +
            Str(st.dormant[k]) + " > " + opts.tidy->ToString() + " * active " +
            Str(st.active[k]);
      }
    }
    rep.Add("tidy", ok, w);
  }
  if (opts.check_stable) {
    bool ok = true;
    std::string w;
    std::vector<std::int64_t> diff(n + 1);
    for (SetId s = 0; s < sys.num_sets() && ok; ++s) {
      std::fill(diff.begin(), diff.end(), 0);
      for (ElementId e : sys.set(s)) {
        if (seen[e] == 0 || !live_of[e]) continue;
        const ElementNode& node = node_of[e];
        if (node.plev > node.lev) {
          ++diff[node.lev];
          --diff[node.plev];
        }
      }
      std::int64_t run = 0;
      for (Level k = 0; k <= top; ++k) {
        run += diff[k];
        if (!BelowPow15(run, k + 1)) {
          ok = false;
          w = "set " + Str(s) + " meets " + Str(run) + " active elements at level <= " +
              Str(k);
          break;
        }
      }
    }
    rep.Add("stable", ok, w);
  }
  return rep;
}

}  // namespace dsc
