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

#include "dsc/engine_logn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dsc/levels.hpp"

namespace dsc {

namespace {

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

std::string Str(std::int64_t v) { return std::to_string(v); }

}  // namespace

LogNEngine::LogNEngine(std::shared_ptr<const SetSystem> sys, LogNConfig cfg)
    : sys_(std::move(sys)),
      cfg_(cfg),
      max_level_(sys_->max_level()),
      num_levels_(max_level_ + 2),
      monitor_(Ratio{1, 5}),
      fg_(num_levels_, &ops_),
      threads_(max_level_ + 1),
      completed_(max_level_ + 1),
      live_(sys_->universe_size(), false) {
  if (cfg_.c_spd < 1) throw std::invalid_argument("c_spd must be positive");
  const double alpha =
      cfg_.gc_alpha >= 0 ? cfg_.gc_alpha
                         : 4.0 * std::log(static_cast<double>(std::max<std::int64_t>(sys_->n_cap(), 2)));
  tracker_ = OutputTracker(sys_->num_sets(),
                           GcRate(insertion_recourse_bound(), alpha),
                           cfg_.deamortize, &ops_);
  fg_.set_validate(cfg_.validate);
}

std::int64_t LogNEngine::insertion_recourse_bound() const {
  return InsertionRecourseBound(max_level_, cfg_.c_spd);
}

StepReport LogNEngine::Step(const Update& u) {
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

void LogNEngine::Foreground(const Update& u) {
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
    fg_.MarkDormantAt(e, loc->node.lev);
    live_[e] = false;
    delta_level_ = loc->node.lev;
    return;
  }
  if (live_[e]) throw std::invalid_argument("insert of live element " + Str(e));
  live_[e] = true;
  if (const auto loc = fg_.Find(e)) {
    // Still covered from before its deletion: reactivate in place.
    fg_.Revive(e, loc->node.lev);
    delta_level_ = loc->node.lev;
    return;
  }
  if (const auto s = fg_.HighestCoveringSet(*sys_, e)) {
    const Level lev = *fg_.SetLevel(*s);
    fg_.Assign(e, *s, lev, lev);
    delta_level_ = lev;
    return;
  }
  const SetId s = sys_->incident(e).front();
  fg_.AddSet(s, 0);
  tracker_.AddRef(s);
  fg_.Assign(e, s, 0, 0);
  delta_level_ = 0;
}

LogNEngine::Thread LogNEngine::MakeThread(Level k) const {
  Thread th;
  th.k = k;
  th.sol = HierarchicalSolution(num_levels_, const_cast<OpCounts*>(&ops_));
  th.sol.set_validate(cfg_.validate);
  th.pointer = k + 1;
  th.unc_plev.assign(sys_->universe_size(), -1);
  th.unc_by_set.resize(sys_->num_sets());
  th.clock.t_start = t_;
  const std::int64_t sub = fg_.SubUniverseSize(k);
  th.clock.min_sub = sub;
  th.clock.base = sub <= cfg_.c_spd;
  return th;
}

void LogNEngine::AddUncovered(Thread& th, ElementId e, Level plev) const {
  ops_.ordered += 1;
  th.unc_plev[e] = plev;
  ++th.num_uncovered;
  for (SetId s : sys_->incident(e)) {
    auto& pending = th.unc_by_set[s];
    pending.insert(e);
    ops_.ordered += 1;
    if (s < th.queued_upto) {
      th.queue.insert({-static_cast<std::int64_t>(pending.size()), s});
      ops_.priority += 1;
    }
  }
}

void LogNEngine::RemoveUncovered(Thread& th, ElementId e) const {
  ops_.ordered += 1;
  th.unc_plev[e] = -1;
  --th.num_uncovered;
  for (SetId s : sys_->incident(e)) {
    // The queue entry of s goes stale; Greedy repairs it on demand.
    th.unc_by_set[s].erase(e);
    ops_.ordered += 1;
  }
}

void LogNEngine::CoverFromCurrent(Thread& th, ElementId e) const {
  const Level plev = th.unc_plev[e];
  RemoveUncovered(th, e);
  th.sol.Assign(e, th.current, th.current_level, plev);
  th.picks.back().coverage.push_back(e);
}

bool LogNEngine::Scan(Thread& th, std::int64_t budget) const {
  // Merge the foreground's live element indexes at levels <= k by id.
  using It = OrderedMap<ElementId, ElementNode>::const_iterator;
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
    if (best < 0) return true;
    if (budget <= 0) return false;
    const auto& [e, node] = *runs[best].first;
    AddUncovered(th, e, std::max(th.k + 1, node.plev));
    th.cursor = e;
    ++runs[best].first;
    ops_.ordered += 1;
    --budget;
  }
}

bool LogNEngine::BuildQueue(Thread& th, std::int64_t budget) const {
  const SetId m = sys_->num_sets();
  while (th.queued_upto < m) {
    if (budget <= 0) return false;
    const SetId s = th.queued_upto++;
    const auto& pending = th.unc_by_set[s];
    ops_.ordered += 1;
    --budget;
    if (!pending.empty()) {
      th.queue.insert({-static_cast<std::int64_t>(pending.size()), s});
      ops_.priority += 1;
    }
  }
  return true;
}

LogNEngine::Advance LogNEngine::Greedy(Thread& th, std::int64_t& budget, bool mirror) {
  if (th.current < 0) {
    std::int64_t key = 0;
    SetId s = -1;
    while (true) {
      if (th.queue.empty()) return Advance::kExhausted;
      const auto top = *th.queue.begin();
      const auto count = static_cast<std::int64_t>(th.unc_by_set[top.second].size());
      ops_.priority += 1;
      ops_.ordered += 1;
      if (-top.first == count) {
        key = count;
        s = top.second;
        break;
      }
      // Stale: the set lost elements since this entry was made.
      th.queue.erase(th.queue.begin());
      ops_.priority += 1;
      if (count > 0) {
        th.queue.insert({-count, top.second});
        ops_.priority += 1;
      }
    }
    if (budget <= 0) return Advance::kOutOfBudget;
    const Level lev = std::min(FloorLog15(key), th.pointer);
    th.pointer = std::min(th.pointer, lev);
    th.sol.AddSet(s, lev);
    th.order.push_back(s);
    th.current = s;
    th.current_level = lev;
    th.picks.push_back({s, {}, lev});
    if (mirror) AddToBuffer(th, s);
  }
  while (true) {
    const auto& pending = th.unc_by_set[th.current];
    ops_.ordered += 1;
    if (pending.empty()) {
      th.current = -1;
      return Advance::kSetCompleted;
    }
    if (budget <= 0) return Advance::kOutOfBudget;
    CoverFromCurrent(th, *pending.begin());
    --budget;
  }
}

void LogNEngine::FinishGreedy(Thread& th, bool mirror) {
  std::int64_t budget = kUnbounded;
  while (Greedy(th, budget, mirror) != Advance::kExhausted) {
  }
}

void LogNEngine::AddToBuffer(Thread& th, SetId s) {
  ops_.ordered += 1;
  if (th.buffer.insert(s).second) tracker_.AddRef(s);
}

LogNEngine::Outcome LogNEngine::RunThread(Thread& th) {
  const std::int64_t c = cfg_.c_spd;
  if (th.clock.base && th.phase == Phase::kPreparation && th.clock.t_start == t_) {
    th.scanned = Scan(th, kUnbounded);
    BuildQueue(th, kUnbounded);
    FinishGreedy(th, false);
    for (SetId s : th.order) AddToBuffer(th, s);
    return Outcome::kTerminated;
  }
  switch (th.phase) {
    case Phase::kPreparation:
      if (!th.scanned) th.scanned = Scan(th, c);
      // Entering a set into Q_k costs about what scanning one incidence does.
      if (th.scanned && BuildQueue(th, c * sys_->f_max())) th.phase = Phase::kComputation;
      return Outcome::kRunning;

    case Phase::kComputation: {
      std::int64_t budget = c;
      while (true) {
        if (Greedy(th, budget, false) == Advance::kOutOfBudget) {
          return Outcome::kRunning;
        }
        const std::int64_t sets = static_cast<std::int64_t>(th.order.size());
        if (th.num_uncovered <= sets) {
          if (sets <= c) {
            // Shortcut: copy and tail fit in this step.
            for (SetId s : th.order) AddToBuffer(th, s);
            th.copy_cursor = th.order.size();
            FinishGreedy(th, true);
            return Outcome::kTerminated;
          }
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
      if (th.num_uncovered <= c) {
        FinishGreedy(th, true);
        return Outcome::kTerminated;
      }
      std::int64_t budget = c;
      while (true) {
        const Advance a = Greedy(th, budget, true);
        if (a == Advance::kExhausted) return Outcome::kTerminated;
        if (a == Advance::kOutOfBudget) return Outcome::kRunning;
      }
    }
  }
  return Outcome::kRunning;
}

void LogNEngine::DeliverDelta(Thread& th, const Update& u) {
  const ElementId e = u.element;
  if (th.phase == Phase::kPreparation) {
    if (!th.scanned && e > th.cursor) return;  // the scan will reach e
    if (u.op == Op::kDelete) {
      if (th.unc_plev[e] >= 0) RemoveUncovered(th, e);
    } else {
      AddUncovered(th, e, th.pointer);
    }
    ops_.ordered += 1;
    return;
  }
  ops_.ordered += 1;
  if (u.op == Op::kDelete) {
    if (th.unc_plev[e] >= 0) {
      if (th.current >= 0) {
        ops_.ordered += 1;
        if (th.unc_by_set[th.current].contains(e)) {
          // Finish e's assignment to the set in progress, then delete.
          CoverFromCurrent(th, e);
          th.sol.MarkDormantAt(e, th.current_level);
          return;
        }
      }
      RemoveUncovered(th, e);
      return;
    }
    const auto loc = th.sol.Find(e);
    if (!loc || !loc->live) {
      throw std::logic_error("deleted element " + Str(e) + " unknown to thread " +
                             Str(th.k));
    }
    th.sol.MarkDormantAt(e, loc->node.lev);
    return;
  }
  if (const auto loc = th.sol.Find(e)) {
    if (loc->live) {
      throw std::logic_error("inserted element " + Str(e) + " already live in thread " +
                             Str(th.k));
    }
    th.sol.Revive(e, loc->node.lev);
    return;
  }
  if (const auto s = th.sol.HighestCoveringSet(*sys_, e)) {
    const Level lev = *th.sol.SetLevel(*s);
    th.sol.Assign(e, *s, lev, lev);
    return;
  }
  AddUncovered(th, e, th.pointer);
}

void LogNEngine::Switch(Level k) {
  Thread& th = *threads_[k];
  std::vector<HierarchicalSolution::LevelIndex> removed =
      SpliceLevels(fg_, th.sol, k, cfg_.validate);
  for (SetId s : th.order) tracker_.AddRef(s);
  std::vector<SetId> gone;
  for (const auto& li : removed) {
    for (const auto& [s, cov] : li.sets) gone.push_back(s);
  }
  tracker_.ReleaseBatch(gone);
  completed_[k] = CompletedRun{k, th.clock.t_start, t_, std::move(th.picks)};
  EndThread(k, true);
  for (Level j = k - 1; j >= 0; --j) {
    if (threads_[j]) EndThread(j, false);
  }
}

void LogNEngine::EndThread(Level k, bool normal) {
  Thread& th = *threads_[k];
  std::vector<SetId> buffered(th.buffer.begin(), th.buffer.end());
  tracker_.ReleaseBatch(buffered);
  monitor_.OnThreadEnd(k, th.clock, t_, normal);
  threads_[k].reset();
}

bool LogNEngine::Quiescent() const {
  for (const auto& th : threads_) {
    if (th && !th->buffer.empty()) return false;
  }
  return tracker_.garbage().size() == 0;
}

const CompletedRun* LogNEngine::LastCompletedRun(Level k) const {
  return completed_[k] ? &*completed_[k] : nullptr;
}

std::vector<ThreadSummary> LogNEngine::Threads() const {
  std::vector<ThreadSummary> out;
  for (const auto& th : threads_) {
    if (!th) continue;
    out.push_back({th->k, th->phase, th->clock.base, th->clock.t_start,
                   th->clock.tau_sus, static_cast<std::int64_t>(th->order.size()),
                   static_cast<std::int64_t>(th->buffer.size()),
                   th->num_uncovered, th->pointer});
  }
  return out;
}

std::optional<LogNEngine::Extension> LogNEngine::ExtendThread(Level k) const {
  if (k < 0 || k > max_level_ || !threads_[k]) return std::nullopt;
  Thread clone = *threads_[k];
  OpCounts scratch;
  clone.sol.set_counter(&scratch);
  Extension ext;
  ext.phase_at_clone = clone.phase;
  // The scan and greedy only read the foreground and mutate the clone.
  auto* self = const_cast<LogNEngine*>(this);
  const OpCounts saved = ops_;
  if (clone.phase == Phase::kPreparation) {
    clone.scanned = Scan(clone, kUnbounded);
    BuildQueue(clone, kUnbounded);
  }
  std::int64_t budget = kUnbounded;
  while (self->Greedy(clone, budget, false) != Advance::kExhausted) {
  }
  self->ops_ = saved;
  ext.solution = std::move(clone.sol);
  ext.solution.set_counter(nullptr);
  ext.picks = std::move(clone.picks);
  return ext;
}

AuditReport LogNEngine::AuditStep(const LogNAuditOptions& opts) const {
  AuditReport rep;
  HierarchyAuditOptions h;
  h.live = &live_;
  h.tidy = opts.tidy;
  h.check_stable = opts.stable;
  rep.Merge(AuditHierarchy(*sys_, fg_, h), "F.");

  // Output contains F and every buffer.
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
    bool q_ok = true, p_ok = true, r_ok = true, sub_ok = true, b_ok = true;
    std::string q_w, p_w, r_w, sub_w, b_w;
    for (const auto& opt : threads_) {
      if (!opt) continue;
      const Thread& th = *opt;
      const std::string who = "thread " + Str(th.k) + ": ";
      // Every queued set with uncovered elements has an entry whose key is
      // at least its current count.
      std::vector<std::int64_t> best_key(sys_->num_sets(), 0);
      for (const auto& [neg, s] : th.queue) best_key[s] = std::max(best_key[s], -neg);
      for (SetId s = 0; s < sys_->num_sets(); ++s) {
        const auto& pending = th.unc_by_set[s];
        if (s >= th.queued_upto && best_key[s] > 0 && q_ok) {
          q_ok = false;
          q_w = who + "set " + Str(s) + " queued ahead of the build cursor";
        }
        if (pending.empty() || s >= th.queued_upto) continue;
        if (best_key[s] < static_cast<std::int64_t>(pending.size()) && q_ok) {
          q_ok = false;
          q_w = who + "set " + Str(s) + " key below its count";
        }
        for (ElementId e : pending) {
          if ((th.unc_plev[e] < 0 || !sys_->Contains(s, e)) && q_ok) {
            q_ok = false;
            q_w = who + "stale uncovered entry " + Str(e) + " in set " + Str(s);
          }
        }
      }
      std::int64_t counted = 0;
      for (ElementId e = 0; e < sys_->universe_size(); ++e) {
        const Level plev = th.unc_plev[e];
        if (plev < 0) continue;
        ++counted;
        for (SetId s : sys_->incident(e)) {
          if (!th.unc_by_set[s].contains(e) && q_ok) {
            q_ok = false;
            q_w = who + "uncovered element " + Str(e) + " missing from set " + Str(s);
          }
        }
        if (plev < th.pointer && p_ok) {
          p_ok = false;
          p_w = who + "uncovered element " + Str(e) + " plev " + Str(plev) +
                " below pointer " + Str(th.pointer);
        }
      }
      if (counted != th.num_uncovered && q_ok) {
        q_ok = false;
        q_w = who + "uncovered count drifted";
      }
      if (th.pointer > th.k + 1 && p_ok) {
        p_ok = false;
        p_w = who + "pointer above k+1";
      }
      for (Level l = 0; l < th.sol.num_levels() && p_ok; ++l) {
        if (!th.sol.level(l).sets.empty() && l < th.pointer) {
          p_ok = false;
          p_w = who + "set at level " + Str(l) + " below pointer " + Str(th.pointer);
        }
      }
      // Buffer mirrors the solution during copy and tail.
      if (th.phase == Phase::kCopy || th.phase == Phase::kTail) {
        for (SetId s : th.buffer) {
          if (!th.sol.SetLevel(s).has_value() && r_ok) {
            r_ok = false;
            r_w = who + "buffer set " + Str(s) + " not in B_k";
          }
        }
        if (th.phase == Phase::kTail &&
            static_cast<std::int64_t>(th.buffer.size()) != th.sol.NumSets() && r_ok) {
          r_ok = false;
          r_w = who + "buffer differs from B_k during tail";
        }
      } else if (!th.buffer.empty() && r_ok) {
        r_ok = false;
        r_w = who + "buffer nonempty in phase " + PhaseName(th.phase);
      }
      // Sub-universe: uncovered plus live covered equals L_k of F.
      if (th.phase != Phase::kPreparation) {
        std::int64_t inside = th.num_uncovered;
        for (Level l = 0; l < th.sol.num_levels(); ++l) inside += th.sol.level(l).live.size();
        bool match = inside == fg_.SubUniverseSize(th.k);
        for (Level l = 0; l <= th.k && match; ++l) {
          for (const auto& [e, node] : fg_.level(l).live) {
            if (th.unc_plev[e] < 0) {
              const auto loc = th.sol.Find(e);
              if (!loc || !loc->live) {
                match = false;
                break;
              }
            }
          }
        }
        if (!match && sub_ok) {
          sub_ok = false;
          sub_w = who + "sub-universe differs from L_k of F";
        }
      }
      // Structural audit of B_k; the set in progress is still partial.
      HierarchyAuditOptions bh;
      bh.live = &live_;
      bh.check_feasibility = false;
      bh.check_stable = false;
      const AuditReport br = AuditHierarchy(*sys_, th.sol, bh);
      for (const CheckResult& c : br.checks()) {
        if (c.passed || !b_ok) continue;
        if (th.current >= 0 && (c.name == "nonempty_coverage" || c.name == "level_invariant")) {
          continue;
        }
        b_ok = false;
        b_w = who + c.name + ": " + c.witness;
      }
    }
    rep.Add("thread.queue_keys", q_ok, q_w);
    rep.Add("thread.pointer", p_ok, p_w);
    rep.Add("thread.buffer", r_ok, r_w);
    rep.Add("thread.sub_universe", sub_ok, sub_w);
    rep.Add("thread.structure", b_ok, b_w);
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
