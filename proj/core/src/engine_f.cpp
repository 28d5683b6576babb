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


#include "dsc/engine_f.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace dsc {

namespace {

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

std::string Str(std::int64_t v) { return std::to_string(v); }

}  // namespace

FEngine::FEngine(std::shared_ptr<const SetSystem> sys, FConfig cfg)
    : sys_(std::move(sys)),
      cfg_(cfg),
      max_level_(sys_->max_level()),
      num_levels_(max_level_ + 2),
      monitor_(Ratio{1, 10}),
      threads_(max_level_ + 1),
      live_(sys_->universe_size(), false) {
  if (cfg_.c_spd < 1) throw std::invalid_argument("c_spd must be positive");
  if (max_level_ + 1 > DualScale::kMaxExponent) {
    throw std::invalid_argument("n_cap too large for exact duals");
  }
  scale_ = std::make_unique<DualScale>(max_level_ + 1);
  fg_ = PrimalDualSolution(num_levels_, scale_.get(), &ops_);
  const double alpha = cfg_.gc_alpha >= 0 ? cfg_.gc_alpha : 4.0 * sys_->f_max();
  tracker_ = OutputTracker(sys_->num_sets(),
                           GcRate(insertion_recourse_bound(), alpha),
                           cfg_.deamortize, &ops_);
}

std::int64_t FEngine::insertion_recourse_bound() const {
  return InsertionRecourseBound(max_level_, cfg_.c_spd);
}

StepReport FEngine::Step(const Update& u) {
  ++t_;
  const OpCounts before = ops_;
  Foreground(u);

  std::int64_t min_tau = CopyAdmission::kInfinite;
  for (const auto& th : threads_) {
    if (th && (th->phase == Phase::kCopy || th->phase == Phase::kTail)) {
      min_tau = std::min(min_tau, th->clock.tau_sus);
    }
  }
  admission_.Reset(min_tau);

  for (Level k = max_level_; k >= 0; --k) {
    bool fresh = false;
    if (!threads_[k]) {
      threads_[k] = MakeThread(k);
      fresh = true;
    }
    Thread& th = *threads_[k];
    if (!fresh && u.op != Op::kIdle && delta_level_ <= k) DeliverDelta(th, u);
    th.clock.min_sub = std::min(th.clock.min_sub, fg_.SubUniverseSize(k));
    const Outcome out = RunThread(th);
    if (out == Outcome::kTerminated) {
      Switch(k);
      break;
    }
    if (out == Outcome::kAborted) EndThread(k, false);
  }

  StepRecourse rec = tracker_.EndStep();
  StepReport r;
  r.t = t_;
  r.op = u.op;
  r.element = u.op == Op::kIdle ? -1 : u.element;
  r.insertion_recourse = rec.insertion;
  r.deletion_recourse = rec.deletion;
  r.output_size = tracker_.output_size();
  r.ds_ops = ops_ - before;
  r.added = std::move(rec.added);
  r.removed = std::move(rec.removed);
  return r;
}

void FEngine::Foreground(const Update& u) {
  delta_level_ = -1;
  if (u.op == Op::kIdle) return;
  const ElementId e = u.element;
  if (e < 0 || e >= sys_->universe_size()) {
    throw std::invalid_argument("element " + Str(e) + " outside the universe");
  }
  if (u.op == Op::kDelete) {
    if (!live_[e]) throw std::invalid_argument("delete of dormant element " + Str(e));
    const auto loc = fg_.Find(e);
    if (!loc || !loc->live) throw std::logic_error("live element not covered by F");
    // The dual stays behind on the dormant element.
    fg_.MarkDormantAt(e, loc->lev);
    live_[e] = false;
    delta_level_ = loc->lev;
    return;
  }
  if (live_[e]) throw std::invalid_argument("insert of live element " + Str(e));
  live_[e] = true;
  if (const auto loc = fg_.Find(e)) {
    fg_.ReviveAt(e, loc->lev);
    delta_level_ = loc->lev;
    return;
  }
  if (const auto hs = fg_.HighestSet(*sys_, e)) {
    fg_.Cover(*sys_, e, hs->first, hs->second, 0);
    delta_level_ = hs->second;
    return;
  }
  // Smallest slack 1 - w_s, ties to the smaller id.
  SetId best = -1;
  Dual best_w = -1;
  for (SetId s : sys_->incident(e)) {
    const Dual w = fg_.SetDual(s);
    ops_.dual += 1;
    if (w > best_w) {
      best = s;
      best_w = w;
    }
  }
  fg_.AddSet(best, 0);
  tracker_.AddRef(best);
  fg_.Cover(*sys_, e, best, 0, scale_->one() - best_w);
  delta_level_ = 0;
}

FEngine::Thread FEngine::MakeThread(Level k) const {
  Thread th;
  th.k = k;
  th.sol = PrimalDualSolution(num_levels_, scale_.get(), &ops_);
  th.set_level.assign(sys_->num_sets(), -1);
  th.where.assign(sys_->universe_size(), kOutside);
  th.exposed_by_set.resize(sys_->num_sets());
  th.settled.assign(sys_->num_sets(), 0);
  th.settled_ready.assign(sys_->num_sets(), 0);
  th.pointer = k + 1;
  th.clock.t_start = t_;
  const std::int64_t sub = fg_.SubUniverseSize(k);
  th.clock.min_sub = sub;
  th.clock.base = sub <= cfg_.c_spd;
  return th;
}

Dual& FEngine::Settled(Thread& th, SetId s) const {
  if (!th.settled_ready[s]) {
    // F above level k is fixed for the lifetime of T_k.
    th.settled[s] = fg_.SetDual(s, th.k + 1);
    th.settled_ready[s] = 1;
  }
  return th.settled[s];
}

FEngine::Target FEngine::KeyOf(const Thread& th, SetId s) const {
  return Target{scale_->two_thirds() - th.settled[s],
                static_cast<std::int64_t>(th.exposed_by_set[s].size()), s};
}

// Key of s before a change, if s has a live queue entry to compare against.
std::optional<FEngine::Target> FEngine::Unqueue(const Thread& th, SetId s) const {
  if (s >= th.queued_upto || th.exposed_by_set[s].empty()) return std::nullopt;
  return KeyOf(th, s);
}

// A key that moved toward the front gets a fresh entry; one that moved back
// keeps its old entry until Rebuild finds it stale.
void FEngine::Requeue(Thread& th, SetId s, const std::optional<Target>& before) const {
  if (s >= th.queued_upto || th.exposed_by_set[s].empty()) return;
  const Target now = KeyOf(th, s);
  if (before && !TargetLess{}(now, *before)) return;
  ops_.priority += 1;
  th.queue.insert(now);
}

bool FEngine::BuildQueue(Thread& th, std::int64_t budget) const {
  const SetId m = sys_->num_sets();
  while (th.queued_upto < m) {
    if (budget <= 0) return false;
    const SetId s = th.queued_upto++;
    ops_.ordered += 1;
    --budget;
    if (!th.exposed_by_set[s].empty()) {
      ops_.priority += 1;
      th.queue.insert(KeyOf(th, s));
    }
  }
  return true;
}

Dual FEngine::BackgroundDual(Thread& th, SetId s) const {
  ops_.dual += 1;
  return Settled(th, s) +
         static_cast<Dual>(th.exposed_by_set[s].size()) * scale_->Pow23(th.pointer);
}

void FEngine::Expose(Thread& th, ElementId e) const {
  th.where[e] = kExposed;
  ++th.num_exposed;
  for (SetId s : sys_->incident(e)) {
    Settled(th, s);
    const auto before = Unqueue(th, s);
    ops_.ordered += 1;
    th.exposed_by_set[s].insert(e);
    Requeue(th, s, before);
  }
}

void FEngine::Unexpose(Thread& th, ElementId e) const {
  th.where[e] = kOutside;
  --th.num_exposed;
  for (SetId s : sys_->incident(e)) {
    ops_.ordered += 1;
    th.exposed_by_set[s].erase(e);
  }
}

void FEngine::Settle(Thread& th, ElementId e, SetId owner) const {
  const Level lev = th.pointer;
  const Dual w = scale_->Pow23(lev);
  for (SetId s : sys_->incident(e)) {
    const auto before = Unqueue(th, s);
    ops_.ordered += 1;
    ops_.dual += 1;
    th.exposed_by_set[s].erase(e);
    th.settled[s] += w;
    Requeue(th, s, before);
  }
  th.where[e] = lev;
  --th.num_exposed;
  th.sol.Cover(*sys_, e, owner, lev, w);
}

void FEngine::CoverDirect(Thread& th, ElementId e, SetId owner, Level lev,
                          Dual w) const {
  if (w != 0) {
    for (SetId s : sys_->incident(e)) {
      Dual& settled = Settled(th, s);
      const auto before = Unqueue(th, s);
      ops_.dual += 1;
      settled += w;
      Requeue(th, s, before);
    }
  }
  th.where[e] = lev;
  th.sol.Cover(*sys_, e, owner, lev, w);
}

std::optional<std::pair<SetId, Level>> FEngine::HighestStarSet(const Thread& th,
                                                               ElementId e) const {
  std::optional<std::pair<SetId, Level>> best;
  for (SetId s : sys_->incident(e)) {
    const Level lev = th.set_level[s];
    if (lev >= 0 && (!best || lev > best->second)) best = {{s, lev}};
  }
  return best;
}

void FEngine::AddStarSet(Thread& th, SetId s, Level lev, bool mirror) {
  th.set_level[s] = lev;
  th.order.push_back(s);
  th.sol.AddSet(s, lev);
  if (mirror) AddToBuffer(th, s);
}

void FEngine::InsertElement(Thread& th, ElementId e, bool mirror) {
  if (const auto hs = HighestStarSet(th, e)) {
    CoverDirect(th, e, hs->first, hs->second, 0);
    return;
  }
  SetId best = -1;
  Dual best_w = -1;
  for (SetId s : sys_->incident(e)) {
    const Dual w = BackgroundDual(th, s);
    if (w > best_w) {
      best = s;
      best_w = w;
    }
  }
  ops_.dual += 1;
  if (scale_->one() - best_w < scale_->Pow23(th.pointer)) {
    AddStarSet(th, best, th.pointer, mirror);
    CoverDirect(th, e, best, th.pointer, scale_->one() - best_w);
    return;
  }
  Expose(th, e);
}

void FEngine::DeleteElement(Thread& th, ElementId e) {
  const Level where = th.where[e];
  if (where == kOutside) return;
  if (const auto hs = HighestStarSet(th, e)) {
    if (where == kExposed) Settle(th, e, hs->first);
    th.sol.MarkDormantAt(e, th.where[e]);
    return;
  }
  if (where != kExposed) {
    throw std::logic_error("covered element " + Str(e) + " in no set of thread " +
                           Str(th.k));
  }
  Unexpose(th, e);
}

bool FEngine::Prepare(Thread& th, std::int64_t budget, bool mirror) {
  using It = OrderedMap<ElementId, DualNode>::const_iterator;
  while (true) {
    std::vector<std::pair<It, It>> runs;
    runs.reserve(th.k + 1);
    for (Level l = 0; l <= th.k; ++l) {
      const auto& idx = fg_.level(l).live;
      runs.emplace_back(idx.upper_bound(th.cursor), idx.end());
    }
    ops_.ordered += th.k + 1;
    while (true) {
      int best = -1;
      for (int i = 0; i < static_cast<int>(runs.size()); ++i) {
        if (runs[i].first == runs[i].second) continue;
        if (best < 0 || runs[i].first->first < runs[best].first->first) best = i;
      }
      if (best < 0) break;
      if (budget <= 0) return false;
      const ElementId e = runs[best].first->first;
      const Dual w = runs[best].first->second.w;
      ++runs[best].first;
      th.cursor = e;
      --budget;
      ops_.ordered += 1;
      if (th.where[e] != kOutside) continue;
      if (th.prep_pass == 1) {
        ops_.ordered += 1;
        if (fg_.IsActive(w, best) && !th.late.contains(e)) Expose(th, e);
      } else {
        InsertElement(th, e, mirror);
      }
    }
    if (th.prep_pass == 2) {
      th.prep_pass = 3;
      return true;
    }
    th.prep_pass = 2;
    th.cursor = -1;
  }
}

FEngine::Advance FEngine::Rebuild(Thread& th, std::int64_t& budget, bool mirror) {
  while (true) {
    if (th.current >= 0) {
      const auto& pending = th.exposed_by_set[th.current];
      ops_.ordered += 1;
      if (pending.empty()) {
        th.current = -1;
        return Advance::kSetCompleted;
      }
      if (budget <= 0) return Advance::kOutOfBudget;
      Settle(th, *pending.begin(), th.current);
      --budget;
      continue;
    }
    if (th.num_exposed == 0) return Advance::kExhausted;
    ops_.priority += 1;
    ops_.dual += 1;
    while (true) {
      if (th.queue.empty()) {
        throw std::logic_error("thread " + Str(th.k) + " has exposed elements but no queue");
      }
      const Target stale = *th.queue.begin();
      if (!th.exposed_by_set[stale.set].empty()) {
        const Target now = KeyOf(th, stale.set);
        if (CompareFractions(stale.num, stale.den, now.num, now.den) == 0) break;
        th.queue.erase(th.queue.begin());
        th.queue.insert(now);
        ops_.priority += 2;
        continue;
      }
      th.queue.erase(th.queue.begin());
      ops_.priority += 1;
    }
    const Target& top = *th.queue.begin();
    if (CompareFractions(top.num, top.den, scale_->Pow23(th.pointer), 1) <= 0) {
      if (budget <= 0) return Advance::kOutOfBudget;
      const SetId s = top.set;
      if (th.set_level[s] < 0) {
        AddStarSet(th, s, th.pointer, mirror);
      } else if (th.set_level[s] != th.pointer) {
        throw std::logic_error("tight set " + Str(s) + " of thread " + Str(th.k) +
                               " below the pointer");
      }
      th.current = s;
      continue;
    }
    // Raise every exposed dual to the next power of 2/3.
    if (th.pointer == 0) {
      throw std::logic_error("thread " + Str(th.k) + " exposed elements at level 0");
    }
    --th.pointer;
  }
}

void FEngine::FinishRebuild(Thread& th, bool mirror) {
  std::int64_t budget = kUnbounded;
  while (Rebuild(th, budget, mirror) != Advance::kExhausted) {
  }
}

void FEngine::AddToBuffer(Thread& th, SetId s) {
  ops_.ordered += 1;
  if (th.buffer.insert(s).second) tracker_.AddRef(s);
}

FEngine::Outcome FEngine::RunThread(Thread& th) {
  const std::int64_t c = cfg_.c_spd;
  if (th.clock.base && th.phase == Phase::kPreparation && th.clock.t_start == t_) {
    Prepare(th, kUnbounded, false);
    BuildQueue(th, kUnbounded);
    FinishRebuild(th, false);
    for (SetId s : th.order) AddToBuffer(th, s);
    return Outcome::kTerminated;
  }
  switch (th.phase) {
    case Phase::kPreparation:
      if (th.prep_pass < 3) Prepare(th, c, false);
      if (th.prep_pass == 3 && BuildQueue(th, c * sys_->f_max())) {
        th.phase = Phase::kComputation;
      }
      return Outcome::kRunning;

    case Phase::kComputation: {
      std::int64_t budget = c;
      while (true) {
        if (Rebuild(th, budget, false) == Advance::kOutOfBudget) {
          return Outcome::kRunning;
        }
        const std::int64_t sets = static_cast<std::int64_t>(th.order.size());
        if (th.num_exposed <= c && sets <= c) {
          // Shortcut: everything left fits in this step.
          for (SetId s : th.order) AddToBuffer(th, s);
          th.copy_cursor = th.order.size();
          FinishRebuild(th, true);
          return Outcome::kTerminated;
        }
        if (th.num_exposed <= sets) {
          th.phase = Phase::kSuspension;
          th.clock.t_sus = t_;
          th.clock.tau_sus = sets;
          return Outcome::kRunning;
        }
      }
    }

    case Phase::kSuspension:
      if (admission_.Admits(th.clock.tau_sus)) {
        monitor_.OnCopyEntry(th.k, th.clock, t_);
        admission_.Enter(th.clock.tau_sus);
        th.phase = Phase::kCopy;
        return Outcome::kRunning;
      }
      if (t_ >= th.clock.t_sus + th.clock.tau_sus / 10) {
        monitor_.OnSuspensionAbort(th.k, th.clock, t_);
        return Outcome::kAborted;
      }
      return Outcome::kRunning;

    case Phase::kCopy: {
      std::int64_t budget = c;
      while (budget > 0 && th.copy_cursor < th.order.size()) {
        AddToBuffer(th, th.order[th.copy_cursor++]);
        --budget;
      }
      if (th.copy_cursor == th.order.size()) th.phase = Phase::kTail;
      return Outcome::kRunning;
    }

    case Phase::kTail: {
      if (th.num_exposed <= c) {
        FinishRebuild(th, true);
        return Outcome::kTerminated;
      }
      std::int64_t budget = c;
      while (true) {
        const Advance a = Rebuild(th, budget, true);
        if (a == Advance::kExhausted) return Outcome::kTerminated;
        if (a == Advance::kOutOfBudget) return Outcome::kRunning;
      }
    }
  }
  return Outcome::kRunning;
}

void FEngine::DeliverDelta(Thread& th, const Update& u) {
  const ElementId e = u.element;
  if (u.op == Op::kDelete) {
    DeleteElement(th, e);
    return;
  }
  if (th.where[e] >= 0) {
    // Still covered in B_k from before its deletion.
    th.sol.ReviveAt(e, th.where[e]);
    return;
  }
  if (th.phase == Phase::kPreparation) {
    ops_.ordered += 1;
    if (th.prep_pass == 1) {
      th.late.insert(e);
    } else if (th.prep_pass == 3 || e <= th.cursor) {
      InsertElement(th, e, false);
    }
    return;
  }
  InsertElement(th, e, th.phase == Phase::kCopy || th.phase == Phase::kTail);
}

void FEngine::Switch(Level k) {
  Thread& th = *threads_[k];
  std::vector<PrimalDualSolution::LevelIndex> removed =
      SplicePrimalDual(fg_, th.sol, k, cfg_.validate);
  for (SetId s : th.order) tracker_.AddRef(s);
  std::vector<SetId> gone;
  for (const auto& li : removed) gone.insert(gone.end(), li.sets.begin(), li.sets.end());
  tracker_.ReleaseBatch(gone);
  EndThread(k, true);
  for (Level j = k - 1; j >= 0; --j) {
    if (threads_[j]) EndThread(j, false);
  }
}

void FEngine::EndThread(Level k, bool normal) {
  Thread& th = *threads_[k];
  std::vector<SetId> buffered(th.buffer.begin(), th.buffer.end());
  tracker_.ReleaseBatch(buffered);
  monitor_.OnThreadEnd(k, th.clock, t_, normal);
  threads_[k].reset();
}

bool FEngine::Quiescent() const {
  for (const auto& th : threads_) {
    if (th && !th->buffer.empty()) return false;
  }
  return tracker_.garbage().size() == 0;
}

std::vector<ThreadSummary> FEngine::Threads() const {
  std::vector<ThreadSummary> out;
  for (const auto& th : threads_) {
    if (!th) continue;
    out.push_back({th->k, th->phase, th->clock.base, th->clock.t_start,
                   th->clock.tau_sus, static_cast<std::int64_t>(th->order.size()),
                   static_cast<std::int64_t>(th->buffer.size()), th->num_exposed,
                   th->pointer});
  }
  return out;
}

std::optional<FEngine::Extension> FEngine::ExtendThread(Level k) const {
  if (k < 0 || k > max_level_ || !threads_[k]) return std::nullopt;
  Thread clone = *threads_[k];
  Extension ext;
  ext.phase_at_clone = clone.phase;
  auto* self = const_cast<FEngine*>(this);
  const OpCounts saved = ops_;
  OpCounts scratch;
  clone.sol.set_counter(&scratch);
  // mirror = false keeps the tracker untouched.
  if (clone.phase == Phase::kPreparation) {
    if (clone.prep_pass < 3) self->Prepare(clone, kUnbounded, false);
    self->BuildQueue(clone, kUnbounded);
  }
  self->FinishRebuild(clone, false);
  ops_ = saved;
  ext.solution = std::move(clone.sol);
  ext.solution.set_counter(nullptr);
  return ext;
}

AuditReport FEngine::AuditStep(const FAuditOptions& opts) const {
  AuditReport rep;
  PrimalDualAuditOptions fo;
  fo.live = &live_;
  fo.tidy = opts.tidy;
  rep.Merge(AuditPrimalDual(*sys_, fg_, fo), "F.");

  bool out_ok = true;
  std::string out_w;
  for (SetId s : fg_.Sets()) {
    if (!tracker_.InOutput(s)) {
      out_ok = false;
      out_w = "foreground set " + Str(s) + " missing from output";
      break;
    }
  }
  rep.Add("output_contains_foreground", out_ok, out_w);

  if (opts.threads) {
    const std::int32_t U = sys_->universe_size();
    const std::int32_t m = sys_->num_sets();
    bool idx_ok = true, dual_ok = true, tight_ok = true, lev_ok = true, high_ok = true;
    bool buf_ok = true, size_ok = true, sub_ok = true, exp_ok = true;
    std::string idx_w, dual_w, tight_w, lev_w, high_w, buf_w, size_w, sub_w, exp_w;
    auto fail = [](bool& ok, std::string& w, std::string msg) {
      if (ok) {
        ok = false;
        w = std::move(msg);
      }
    };
    for (const auto& opt : threads_) {
      if (!opt) continue;
      const Thread& th = *opt;
      const std::string who = "thread " + Str(th.k) + ": ";
      const Dual x = scale_->Pow23(th.pointer);

      // Element state against the solution and exposed indexes.
      std::int64_t exposed = 0;
      std::vector<Dual> settled(m, 0);
      for (SetId s = 0; s < m; ++s) settled[s] = fg_.SetDual(s, th.k + 1);
      for (ElementId e = 0; e < U; ++e) {
        const Level wh = th.where[e];
        if (wh == kExposed) {
          ++exposed;
          if (!live_[e]) fail(exp_ok, exp_w, who + "exposed element " + Str(e) + " dormant");
          for (SetId s : sys_->incident(e)) {
            if (!th.exposed_by_set[s].contains(e)) {
              fail(idx_ok, idx_w, who + "exposed " + Str(e) + " missing from set " + Str(s));
            }
            if (th.set_level[s] > th.pointer) {
              fail(exp_ok, exp_w, who + "exposed " + Str(e) + " inside set " + Str(s) +
                                      " above the pointer");
            }
          }
        } else if (wh >= 0) {
          const auto loc = th.sol.Find(e);
          if (!loc || loc->lev != wh) {
            fail(idx_ok, idx_w, who + "covered " + Str(e) + " not at level " + Str(wh));
            continue;
          }
          if (loc->node.w > scale_->Pow23(wh)) {
            fail(lev_ok, lev_w, who + "element " + Str(e) + " dual above (2/3)^" + Str(wh));
          }
          Level top = -1;
          for (SetId s : sys_->incident(e)) {
            settled[s] += loc->node.w;
            top = std::max(top, th.set_level[s]);
          }
          if (top != wh) {
            fail(high_ok, high_w, who + "element " + Str(e) + " at level " + Str(wh) +
                                      " highest set at " + Str(top));
          }
        }
      }
      if (exposed != th.num_exposed) fail(idx_ok, idx_w, who + "exposed count drifted");
      // First entry per set in queue order is its smallest key.
      std::vector<const Target*> first(m, nullptr);
      for (const Target& t : th.queue) {
        if (!first[t.set]) first[t.set] = &t;
      }
      for (SetId s = 0; s < m; ++s) {
        const auto& pend = th.exposed_by_set[s];
        for (ElementId e : pend) {
          if (th.where[e] != kExposed) {
            fail(idx_ok, idx_w, who + "stale exposed entry " + Str(e) + " in set " + Str(s));
          }
        }
        if ((th.settled_ready[s] && th.settled[s] != settled[s]) ||
            (!th.settled_ready[s] && settled[s] != fg_.SetDual(s, th.k + 1))) {
          fail(idx_ok, idx_w, who + "settled dual of set " + Str(s) + " drifted");
        }
        if (s >= th.queued_upto && first[s]) {
          fail(idx_ok, idx_w, who + "set " + Str(s) + " queued ahead of the build cursor");
        }
        if (!pend.empty() && s < th.queued_upto) {
          const Target now = KeyOf(th, s);
          if (!first[s] || TargetLess{}(now, *first[s])) {
            fail(idx_ok, idx_w, who + "set " + Str(s) + " key above its target");
          }
        }
        const Dual ws = settled[s] + static_cast<Dual>(pend.size()) * x;
        if (ws > scale_->one()) {
          fail(dual_ok, dual_w, who + "set " + Str(s) + " dual " + scale_->ToString(ws) + " > 1");
        }
        if (th.set_level[s] >= 0 && ws < scale_->two_thirds()) {
          fail(tight_ok, tight_w, who + "set " + Str(s) + " dual " + scale_->ToString(ws) +
                                      " < 2/3");
        }
      }
      if (th.pointer < 0 || th.pointer > th.k + 1) fail(lev_ok, lev_w, who + "pointer out of range");

      if (th.phase == Phase::kCopy || th.phase == Phase::kTail) {
        if (static_cast<std::int64_t>(th.order.size()) > 3 * th.clock.tau_sus) {
          fail(size_ok, size_w, who + "|S*| " + Str(static_cast<std::int64_t>(th.order.size())) +
                                    " > 3 * tau_sus " + Str(th.clock.tau_sus));
        }
        for (SetId s : th.buffer) {
          if (th.set_level[s] < 0) fail(buf_ok, buf_w, who + "buffer set " + Str(s) + " not in S*");
        }
        if (th.phase == Phase::kTail &&
            static_cast<std::size_t>(th.buffer.size()) != th.order.size()) {
          fail(buf_ok, buf_w, who + "buffer differs from S* during tail");
        }
      } else if (!th.buffer.empty()) {
        fail(buf_ok, buf_w, who + "buffer nonempty in phase " + PhaseName(th.phase));
      }

      if (th.phase != Phase::kPreparation) {
        for (Level l = 0; l <= th.k; ++l) {
          for (const auto& [e, node] : fg_.level(l).live) {
            const Level wh = th.where[e];
            if (wh == kOutside || (wh >= 0 && !th.sol.level(wh).live.contains(e))) {
              fail(sub_ok, sub_w, who + "live element " + Str(e) + " of L_k missing");
            }
          }
        }
      }
    }
    rep.Add("thread.indexes", idx_ok, idx_w);
    rep.Add("thread.dual_feasibility", dual_ok, dual_w);
    rep.Add("thread.tight_sets", tight_ok, tight_w);
    rep.Add("thread.level_invariant", lev_ok, lev_w);
    rep.Add("thread.highest_level", high_ok, high_w);
    rep.Add("thread.exposed", exp_ok, exp_w);
    rep.Add("thread.buffer", buf_ok, buf_w);
    rep.Add("thread.solution_size", size_ok, size_w);
    rep.Add("thread.sub_universe", sub_ok, sub_w);
  }

  if (opts.schedule_bounds) {
    std::vector<std::pair<Level, ThreadClock>> running;
    for (const auto& th : threads_) {
      if (th) running.emplace_back(th->k, th->clock);
    }
    monitor_.Report(running, t_, &rep);
  }
  return rep;
}

}  // namespace dsc
