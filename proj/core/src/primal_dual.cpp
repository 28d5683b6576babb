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


#include "dsc/primal_dual.hpp"

#include <algorithm>
#include <string>

namespace dsc {

namespace {

std::string Str(std::int64_t v) { return std::to_string(v); }

}  // namespace

PrimalDualSolution::PrimalDualSolution(Level num_levels, const DualScale* scale,
                                       OpCounts* ops)
    : levels_(num_levels), scale_(scale), ops_(ops) {
  if (scale_ == nullptr || scale_->exponent() < num_levels - 1) {
    throw StructureError("dual scale too small for " + Str(num_levels) + " levels");
  }
}

PrimalDualSolution::LevelIndex& PrimalDualSolution::mut_level(Level l) {
  if (l < 0 || l >= num_levels()) {
    throw StructureError("level " + Str(l) + " out of range");
  }
  return levels_[l];
}

void PrimalDualSolution::AddSet(SetId s, Level lev) {
  LevelIndex& li = mut_level(lev);
  Count();
  if (!li.sets.insert(s).second) {
    throw StructureError("set " + Str(s) + " already at level " + Str(lev));
  }
}

std::optional<Level> PrimalDualSolution::SetLevel(SetId s) const {
  for (Level l = num_levels() - 1; l >= 0; --l) {
    Count();
    if (levels_[l].sets.contains(s)) return l;
  }
  return std::nullopt;
}

void PrimalDualSolution::Cover(const SetSystem& sys, ElementId e, SetId owner,
                               Level lev, Dual w) {
  LevelIndex& li = mut_level(lev);
  if (w < 0) throw StructureError("negative dual for element " + Str(e));
  Count(2);
  if (!li.sets.contains(owner)) {
    throw StructureError("owner " + Str(owner) + " of element " + Str(e) +
                         " not at level " + Str(lev));
  }
  if (!li.live.emplace(e, DualNode{w, owner}).second) {
    throw StructureError("element " + Str(e) + " already covered at level " + Str(lev));
  }
  CountDual();
  if (IsActive(w, lev)) ++li.active;
  if (w == 0) return;
  for (SetId s : sys.incident(e)) {
    Count();
    CountDual();
    li.incident[s] += w;
  }
}

void PrimalDualSolution::MarkDormantAt(ElementId e, Level lev) {
  LevelIndex& li = mut_level(lev);
  Count(2);
  auto node = li.live.extract(e);
  if (node.empty()) {
    throw StructureError("element " + Str(e) + " not live at level " + Str(lev));
  }
  if (IsActive(node.mapped().w, lev)) --li.active;
  li.dormant.insert(std::move(node));
}

void PrimalDualSolution::ReviveAt(ElementId e, Level lev) {
  LevelIndex& li = mut_level(lev);
  Count(2);
  auto node = li.dormant.extract(e);
  if (node.empty()) {
    throw StructureError("element " + Str(e) + " not dormant at level " + Str(lev));
  }
  if (IsActive(node.mapped().w, lev)) ++li.active;
  li.live.insert(std::move(node));
}

std::optional<PrimalDualSolution::Located> PrimalDualSolution::Find(
    ElementId e) const {
  for (Level l = num_levels() - 1; l >= 0; --l) {
    const LevelIndex& li = levels_[l];
    Count(2);
    if (auto it = li.live.find(e); it != li.live.end()) {
      return Located{l, it->second, true};
    }
    if (auto it = li.dormant.find(e); it != li.dormant.end()) {
      return Located{l, it->second, false};
    }
  }
  return std::nullopt;
}

Dual PrimalDualSolution::SetDual(SetId s, Level from) const {
  Dual total = 0;
  for (Level l = std::max<Level>(from, 0); l < num_levels(); ++l) {
    Count();
    auto it = levels_[l].incident.find(s);
    if (it != levels_[l].incident.end()) {
      CountDual();
      total += it->second;
    }
  }
  return total;
}

std::optional<std::pair<SetId, Level>> PrimalDualSolution::HighestSet(
    const SetSystem& sys, ElementId e) const {
  std::optional<std::pair<SetId, Level>> best;
  for (SetId s : sys.incident(e)) {
    const auto lev = SetLevel(s);
    if (lev && (!best || *lev > best->second)) best = {{s, *lev}};
  }
  return best;
}

std::int64_t PrimalDualSolution::SubUniverseSize(Level k) const {
  std::int64_t n = 0;
  for (Level l = 0; l <= k && l < num_levels(); ++l) {
    n += static_cast<std::int64_t>(levels_[l].live.size());
  }
  return n;
}

std::int64_t PrimalDualSolution::NumSets() const {
  std::int64_t n = 0;
  for (const LevelIndex& li : levels_) n += static_cast<std::int64_t>(li.sets.size());
  return n;
}

std::vector<SetId> PrimalDualSolution::Sets() const {
  std::vector<SetId> out;
  for (const LevelIndex& li : levels_) out.insert(out.end(), li.sets.begin(), li.sets.end());
  std::sort(out.begin(), out.end());
  return out;
}

DualLevelStats PrimalDualSolution::Stats() const {
  DualLevelStats st;
  std::int64_t live = 0, active = 0, dormant = 0;
  for (const LevelIndex& li : levels_) {
    live += static_cast<std::int64_t>(li.live.size());
    active += li.active;
    dormant += static_cast<std::int64_t>(li.dormant.size());
    st.live.push_back(live);
    st.active.push_back(active);
    st.passive.push_back(live - active);
    st.dormant.push_back(dormant);
  }
  return st;
}

DualLevelStats PrimalDualSolution::RecomputeStats() const {
  DualLevelStats st;
  std::int64_t live = 0, active = 0, dormant = 0;
  for (Level l = 0; l < num_levels(); ++l) {
    const LevelIndex& li = levels_[l];
    for (const auto& [e, node] : li.live) {
      ++live;
      if (node.w == scale_->Pow23(l)) ++active;
    }
    dormant += static_cast<std::int64_t>(li.dormant.size());
    st.live.push_back(live);
    st.active.push_back(active);
    st.passive.push_back(live - active);
    st.dormant.push_back(dormant);
  }
  return st;
}

std::vector<PrimalDualSolution::LevelIndex> SplicePrimalDual(
    PrimalDualSolution& target, PrimalDualSolution& source, Level k,
    bool validate) {
  const Level n = target.num_levels();
  if (source.num_levels() != n) {
    throw StructureError("splice between solutions of different heights");
  }
  if (k < 0 || k + 1 >= n) throw StructureError("splice level out of range");
  using LevelIndex = PrimalDualSolution::LevelIndex;

  LevelIndex& tgt_next = target.levels_[k + 1];
  LevelIndex& src_next = source.levels_[k + 1];
  if (validate) {
    for (Level l = 0; l <= k + 1; ++l) {
      for (SetId s : source.levels_[l].sets) {
        for (Level h = k + 1; h < n; ++h) {
          if (target.levels_[h].sets.contains(s)) {
            throw StructureError("duplicate set " + std::to_string(s) +
                                 " across the splice boundary");
          }
        }
      }
    }
  }
  target.Count(3);
  tgt_next.sets.merge(src_next.sets);
  tgt_next.live.merge(src_next.live);
  tgt_next.dormant.merge(src_next.dormant);
  if (!src_next.sets.empty() || !src_next.live.empty() ||
      !src_next.dormant.empty()) {
    throw StructureError("duplicate key while merging level " +
                         std::to_string(k + 1));
  }
  tgt_next.active += src_next.active;
  for (const auto& [s, w] : src_next.incident) {
    target.Count();
    target.CountDual();
    tgt_next.incident[s] += w;
  }
  src_next = LevelIndex{};

  std::vector<LevelIndex> removed(k + 1);
  for (Level l = 0; l <= k; ++l) {
    target.Count(4);
    removed[l] = std::move(target.levels_[l]);
    target.levels_[l] = std::move(source.levels_[l]);
    source.levels_[l] = LevelIndex{};
  }
  return removed;
}

AuditReport AuditPrimalDual(const SetSystem& sys, const PrimalDualSolution& sol,
                            const PrimalDualAuditOptions& opts) {
  AuditReport rep;
  const Level n = sol.num_levels();
  const DualScale& scale = sol.scale();
  const std::int32_t U = sys.universe_size();
  const std::int32_t m = sys.num_sets();

  std::vector<Level> set_level(m, -1);
  bool dup_ok = true;
  std::string dup_w;
  for (Level l = 0; l < n; ++l) {
    for (SetId s : sol.level(l).sets) {
      if (set_level[s] >= 0 && dup_ok) {
        dup_ok = false;
        dup_w = "set " + Str(s) + " at levels " + Str(set_level[s]) + " and " + Str(l);
      }
      set_level[s] = std::max(set_level[s], l);
    }
  }
  rep.Add("no_duplicate_sets", dup_ok, dup_w);

  std::vector<Level> elem_level(U, -1);
  std::vector<Dual> w_of(U, 0);
  std::vector<char> live_of(U, 0);
  bool uniq_ok = true, status_ok = true, owner_ok = true, lev_ok = true;
  std::string uniq_w, status_w, owner_w, lev_w;
  for (Level l = 0; l < n; ++l) {
    for (int pass = 0; pass < 2; ++pass) {
      const auto& idx = pass == 0 ? sol.level(l).live : sol.level(l).dormant;
      for (const auto& [e, node] : idx) {
        if (elem_level[e] >= 0 && uniq_ok) {
          uniq_ok = false;
          uniq_w = "element " + Str(e) + " covered at levels " + Str(elem_level[e]) +
                   " and " + Str(l);
        }
        elem_level[e] = l;
        w_of[e] = node.w;
        live_of[e] = pass == 0;
        if (opts.live != nullptr && (*opts.live)[e] != (pass == 0) && status_ok) {
          status_ok = false;
          status_w = "element " + Str(e) + (pass == 0 ? " dormant but indexed live"
                                                      : " live but indexed dormant");
        }
        if ((node.owner < 0 || set_level[node.owner] != l ||
             !sys.Contains(node.owner, e)) &&
            owner_ok) {
          owner_ok = false;
          owner_w = "element " + Str(e) + " owner " + Str(node.owner) + " invalid at level " +
                    Str(l);
        }
        if ((node.w < 0 || node.w > scale.Pow23(l)) && lev_ok) {
          lev_ok = false;
          lev_w = "element " + Str(e) + " level " + Str(l) + " dual " +
                  scale.ToString(node.w) + " exceeds " + scale.ToString(scale.Pow23(l));
        }
      }
    }
  }
  rep.Add("coverage_unique", uniq_ok, uniq_w);
  if (opts.live != nullptr) rep.Add("live_status", status_ok, status_w);
  rep.Add("owner_consistent", owner_ok, owner_w);
  rep.Add("level_invariant", lev_ok, lev_w);

  // Highest-level invariant and per-set dual sums.
  bool high_ok = true;
  std::string high_w;
  std::vector<Dual> ws(m, 0);
  std::vector<std::vector<std::pair<SetId, Dual>>> by_level(n);
  for (ElementId e = 0; e < U; ++e) {
    if (elem_level[e] < 0) continue;
    Level top = -1;
    for (SetId s : sys.incident(e)) {
      top = std::max(top, set_level[s]);
      ws[s] += w_of[e];
    }
    if (top != elem_level[e] && high_ok) {
      high_ok = false;
      high_w = "element " + Str(e) + " at level " + Str(elem_level[e]) +
               " but highest containing set is at " + Str(top);
    }
  }
  rep.Add("highest_level", high_ok, high_w);

  bool inc_ok = true;
  std::string inc_w;
  for (Level l = 0; l < n && inc_ok; ++l) {
    std::vector<Dual> sums(m, 0);
    for (int pass = 0; pass < 2; ++pass) {
      const auto& idx = pass == 0 ? sol.level(l).live : sol.level(l).dormant;
      for (const auto& [e, node] : idx) {
        for (SetId s : sys.incident(e)) sums[s] += node.w;
      }
    }
    for (SetId s = 0; s < m; ++s) {
      auto it = sol.level(l).incident.find(s);
      const Dual stored = it == sol.level(l).incident.end() ? 0 : it->second;
      if (stored != sums[s]) {
        inc_ok = false;
        inc_w = "level " + Str(l) + " set " + Str(s) + " incident sum " +
                scale.ToString(stored) + " != " + scale.ToString(sums[s]);
        break;
      }
    }
  }
  rep.Add("incident_sums", inc_ok, inc_w);

  bool feas_dual = true, tight_ok = true;
  std::string feas_dual_w, tight_w;
  for (SetId s = 0; s < m; ++s) {
    if (ws[s] > scale.one() && feas_dual) {
      feas_dual = false;
      feas_dual_w = "set " + Str(s) + " dual " + scale.ToString(ws[s]) + " > 1";
    }
    if (set_level[s] >= 0 && ws[s] < scale.two_thirds() && tight_ok) {
      tight_ok = false;
      tight_w = "set " + Str(s) + " dual " + scale.ToString(ws[s]) + " < 2/3";
    }
  }
  rep.Add("dual_feasibility", feas_dual, feas_dual_w);
  rep.Add("tight_sets", tight_ok, tight_w);

  const DualLevelStats st = sol.Stats();
  rep.Add("level_stats", st == sol.RecomputeStats(), "incremental tallies drifted");

  if (opts.live != nullptr && opts.check_feasibility) {
    bool ok = true;
    std::string w;
    for (ElementId e = 0; e < U; ++e) {
      if ((*opts.live)[e] && !(elem_level[e] >= 0 && live_of[e])) {
        ok = false;
        w = "live element " + Str(e) + " uncovered";
        break;
      }
    }
    rep.Add("feasibility", ok, w);
  }

  if (opts.tidy) {
    const Level top = opts.max_check_level >= 0 ? opts.max_check_level : n - 2;
    bool ok = true;
    std::string w;
    for (Level k = 0; k <= top && k < n; ++k) {
      const std::int64_t lhs = st.dormant[k] + st.passive[k];
      const std::int64_t rhs = st.active[k] + opts.exposed;
      if (!opts.tidy->AtMostTimes(lhs, rhs)) {
        ok = false;
        w = "level " + Str(k) + ": dormant " + Str(st.dormant[k]) + " + passive " +
            Str(st.passive[k]) + " > " + opts.tidy->ToString() + " * (active " +
            Str(st.active[k]) + " + exposed " + Str(opts.exposed) + ")";
        break;
      }
    }
    rep.Add("tidy", ok, w);
  }
  return rep;
}

}  // namespace dsc
