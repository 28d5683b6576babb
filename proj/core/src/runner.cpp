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


#include "dsc/runner.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dsc/engine_f.hpp"
#include "dsc/engine_logn.hpp"
#include "dsc/oracle.hpp"

namespace dsc {

Algo ParseAlgo(std::string_view name) {
  if (name == "logn") return Algo::kLogN;
  if (name == "f") return Algo::kF;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

const char* AlgoName(Algo a) { return a == Algo::kLogN ? "logn" : "f"; }

std::unique_ptr<DynamicSetCover> MakeEngine(std::shared_ptr<const SetSystem> sys,
                                            const EngineOptions& opts) {
  if (opts.algo == Algo::kLogN) {
    LogNConfig cfg;
    if (opts.c_spd > 0) cfg.c_spd = opts.c_spd;
    cfg.gc_alpha = opts.gc_alpha;
    cfg.deamortize = opts.deamortize;
    cfg.validate = opts.validate;
    return std::make_unique<LogNEngine>(std::move(sys), cfg);
  }
  FConfig cfg;
  if (opts.c_spd > 0) cfg.c_spd = opts.c_spd;
  cfg.gc_alpha = opts.gc_alpha;
  cfg.deamortize = opts.deamortize;
  cfg.validate = opts.validate;
  return std::make_unique<FEngine>(std::move(sys), cfg);
}

std::int64_t DefaultAuditEvery(std::int64_t n_cap) { return n_cap <= 500 ? 1 : 16; }

namespace {

// Per-element count of output sets containing it, kept in step with the
// engine's reported output changes.
class CoverageCounter {
 public:
  explicit CoverageCounter(const SetSystem& sys)
      : sys_(sys), count_(sys.universe_size(), 0), live_(sys.universe_size(), false) {}

  void Apply(const StepReport& r) {
    for (SetId s : r.added) Shift(s, +1);
    for (SetId s : r.removed) Shift(s, -1);
    if (r.op == Op::kInsert) {
      live_[r.element] = true;
      if (count_[r.element] == 0) ++bare_;
    } else if (r.op == Op::kDelete) {
      live_[r.element] = false;
      if (count_[r.element] == 0) --bare_;
    }
  }

  // Some live element is in no output set.
  bool Violated() const { return bare_ > 0; }

  ElementId FirstBare() const {
    for (ElementId e = 0; e < sys_.universe_size(); ++e) {
      if (live_[e] && count_[e] == 0) return e;
    }
    return -1;
  }

 private:
  void Shift(SetId s, int d) {
    for (ElementId e : sys_.set(s)) {
      const bool was = count_[e] == 0;
      count_[e] += d;
      const bool now = count_[e] == 0;
      if (live_[e] && was != now) bare_ += now ? 1 : -1;
    }
  }

  const SetSystem& sys_;
  std::vector<std::int32_t> count_;
  std::vector<bool> live_;
  std::int64_t bare_ = 0;
};

}  // namespace

RunResult RunStream(std::shared_ptr<const SetSystem> sys, const UpdateStream& stream,
                    const RunOptions& opts, std::ostream* csv) {
  auto engine = MakeEngine(sys, opts.engine);
  const std::int64_t every =
      opts.audit_every == 0 ? DefaultAuditEvery(sys->n_cap()) : opts.audit_every;
  RunResult res;
  res.insertion_recourse_bound = engine->insertion_recourse_bound();
  res.gc_rate = engine->gc_rate();
  CoverageCounter coverage(*sys);
  std::vector<SetId> before;
  if (csv != nullptr) WriteCsvHeader(*csv);
  std::vector<StepReport> kept;

  SummaryBuilder summary;

  for (const Update& u : stream) {
    StepReport r = engine->Step(u);
    AuditReport extra;
    bool has_extra = false;

    if (opts.check_feasibility) {
      coverage.Apply(r);
      if (coverage.Violated()) {
        ++res.feasibility_violations;
        extra.Add("output_feasible", false,
                  "live element " + std::to_string(coverage.FirstBare()) + " uncovered");
        has_extra = true;
      }
    }
    if (opts.verify_recourse) {
      std::vector<SetId> after = engine->OutputSets();
      const SnapshotRecourse snap = DiffSnapshots(before, after);
      const bool ok = snap.insertion == r.insertion_recourse &&
                      snap.deletion == r.deletion_recourse;
      if (!ok) ++res.recourse_mismatches;
      extra.Add("recourse_verified", ok,
                ok ? "" : "counters (" + std::to_string(r.insertion_recourse) + "," +
                              std::to_string(r.deletion_recourse) + ") vs snapshot (" +
                              std::to_string(snap.insertion) + "," +
                              std::to_string(snap.deletion) + ")");
      has_extra = true;
      before = std::move(after);
    }
    if (every > 0 && r.t % every == 0) {
      r.audit = engine->Audit();
      if (has_extra) r.audit->Merge(extra);
    } else if (has_extra) {
      r.audit = std::move(extra);
    }
    if (r.audit && !r.audit->ok()) res.audit_failed = true;

    if (opts.oracle_exact) {
      const std::vector<ElementId> live = LiveElements(engine->live());
      if (static_cast<std::int64_t>(live.size()) <= opts.oracle_cap) {
        SetOpt(r, ExactOpt(*sys, live, opts.oracle_cap).size);
      }
    }

    if (csv != nullptr) WriteCsvRow(*csv, r);

    summary.Add(r);
    if (opts.keep_reports) {
      r.added.clear();
      r.removed.clear();
      kept.push_back(std::move(r));
    }
  }
  res.summary = summary.Get();
  res.reports = std::move(kept);
  res.monitor = engine->monitor();
  res.final_output = engine->OutputSets();
  return res;
}

}  // namespace dsc
