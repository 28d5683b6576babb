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


// dsc: generate workloads, replay them through an engine, check files.
//
//   dsc gen --universe 200 --sets 60 --freq 3 --steps 1000 --out w.dsc
//   dsc run --algo logn --input w.dsc --metrics w.csv --oracle exact
//   dsc check --input w.dsc
//
// Exit status: 0 ok, 1 audit failure, 2 bad input or arguments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "dsc/instance.hpp"
#include "dsc/metrics.hpp"
#include "dsc/oracle.hpp"
#include "dsc/runner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kAuditFailure = 1;
constexpr int kInputError = 2;

struct GenArgs {
  dsc::WorkloadParams params;
  std::string pattern = "random-churn";
  std::string out;
};

struct RunArgs {
  std::string algo = "logn";
  std::string input;
  std::string metrics;
  std::string summary;
  std::int64_t audit_every = 0;
  std::string oracle = "none";
  std::int64_t oracle_cap = dsc::kDefaultOracleCap;
  std::int64_t c_spd = 0;
  double gc_alpha = -1;
  std::int64_t n_cap = 0;
  bool verify_recourse = false;
  bool no_deamortize = false;
};

struct CheckArgs {
  std::string input;
  std::int64_t n_cap = 0;
};

int DoGen(const GenArgs& a) {
  dsc::WorkloadParams p = a.params;
  p.pattern = dsc::ParsePattern(a.pattern);
  const dsc::Instance inst = dsc::GenerateWorkload(p);
  const std::string text = dsc::SerializeInstance(inst.system, inst.stream);
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(a.out, std::ios::binary);
  if (!f) {
    std::cerr << "dsc gen: cannot write " << a.out << "\n";
    return kInputError;
  }
  f << text;
  return kOk;
}

int DoRun(const RunArgs& a) {
  dsc::Instance inst = dsc::ReadInstanceFile(a.input, a.n_cap);
  for (const std::string& w : inst.warnings) std::cerr << "warning: " << w << "\n";
  dsc::RunOptions o;
  o.engine.algo = dsc::ParseAlgo(a.algo);
  o.engine.c_spd = a.c_spd;
  o.engine.gc_alpha = a.gc_alpha;
  o.engine.deamortize = !a.no_deamortize;
  o.audit_every = a.audit_every;
  o.oracle_exact = a.oracle == "exact";
  o.oracle_cap = a.oracle_cap;
  o.verify_recourse = a.verify_recourse;
  o.keep_reports = false;

  std::ofstream csv;
  if (!a.metrics.empty()) {
    csv.open(a.metrics, std::ios::binary);
    if (!csv) {
      std::cerr << "dsc run: cannot write " << a.metrics << "\n";
      return kInputError;
    }
  }
  auto sys = std::make_shared<const dsc::SetSystem>(std::move(inst.system));
  const dsc::RunResult res =
      dsc::RunStream(sys, inst.stream, o, a.metrics.empty() ? nullptr : &csv);
  const std::string json = dsc::SummaryToJson(res.summary);
  if (!a.summary.empty()) {
    std::ofstream f(a.summary, std::ios::binary);
    f << json;
  } else {
    std::cout << json;
  }
  if (res.audit_failed) {
    std::cerr << "audit failure: " << res.summary.first_violation << "\n";
    return kAuditFailure;
  }
  return kOk;
}

int DoCheck(const CheckArgs& a) {
  const dsc::Instance inst = dsc::ReadInstanceFile(a.input, a.n_cap);
  for (const std::string& w : inst.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "ok: universe " << inst.system.universe_size() << ", sets "
            << inst.system.num_sets() << ", f " << inst.system.f_max() << ", steps "
            << inst.stream.size() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic set cover engines"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a workload instance");
  g->add_option("--universe,-U", gen.params.universe_size, "Universe size")->capture_default_str();
  g->add_option("--sets,-m", gen.params.num_sets, "Number of sets")->capture_default_str();
  g->add_option("--freq,-f", gen.params.freq, "Max sets per element")->capture_default_str();
  g->add_option("--steps", gen.params.steps, "Stream length")->capture_default_str();
  g->add_option("--pattern", gen.pattern, "insert-only | sliding-window | random-churn")
      ->capture_default_str();
  g->add_option("--seed", gen.params.seed, "Generator seed")->capture_default_str();
  g->add_option("--window", gen.params.window, "Sliding-window width (0 = U/2)");
  g->add_option("--out,-o", gen.out, "Output file (default stdout)");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Replay a stream through an engine");
  r->add_option("--algo", run.algo, "logn | f")
      ->check(CLI::IsMember({"logn", "f"}))
      ->capture_default_str();
  r->add_option("--input", run.input, "Instance file")->required();
  r->add_option("--metrics", run.metrics, "Per-step CSV output");
  r->add_option("--summary", run.summary, "Summary JSON output (default stdout)");
  r->add_option("--audit-every", run.audit_every,
                "Steps between audits (default 1 if n <= 500, else 16; -1 disables)");
  r->add_option("--oracle", run.oracle, "exact | none")
      ->check(CLI::IsMember({"exact", "none"}))
      ->capture_default_str();
  r->add_option("--oracle-cap", run.oracle_cap, "Largest live set handed to the exact oracle")
      ->capture_default_str();
  r->add_option("--c-spd", run.c_spd, "Background speed (default: engine's own)");
  r->add_option("--gc-alpha", run.gc_alpha, "Garbage-rate constant (default: engine's own)");
  r->add_option("--n-cap", run.n_cap, "Bound on simultaneous live elements (default U)");
  r->add_flag("--verify-recourse", run.verify_recourse,
              "Cross-check recourse counters against output snapshots");
  r->add_flag("--no-deamortize", run.no_deamortize, "Drop removed sets immediately");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Parse and replay-validate an instance");
  c->add_option("--input", check.input, "Instance file")->required();
  c->add_option("--n-cap", check.n_cap, "Bound on simultaneous live elements (default U)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*g) return DoGen(gen);
    if (*r) return DoRun(run);
    if (*c) return DoCheck(check);
  } catch (const dsc::InstanceError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const dsc::OracleError& e) {
    std::cerr << "oracle error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
