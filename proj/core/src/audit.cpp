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

#include <string>

#include "dsc/types.hpp"

namespace dsc {

char OpSymbol(Op op) {
  switch (op) {
    case Op::kInsert:
      return '+';
    case Op::kDelete:
      return '-';
    case Op::kIdle:
      return '.';
  }
  return '?';
}

std::string Ratio::ToString() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

void AuditReport::Add(const std::string& name, bool passed,
                      std::string witness) {
  for (CheckResult& c : checks_) {
    if (c.name == name) {
      if (c.passed && !passed) {
        c.passed = false;
        c.witness = std::move(witness);
      }
      return;
    }
  }
  checks_.push_back({name, passed, passed ? std::string() : std::move(witness)});
}

void AuditReport::Merge(const AuditReport& other, const std::string& prefix) {
  for (const CheckResult& c : other.checks_) {
    Add(prefix + c.name, c.passed, c.witness);
  }
}

bool AuditReport::ok() const { return FirstFailure() == nullptr; }

const CheckResult* AuditReport::FirstFailure() const {
  for (const CheckResult& c : checks_) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

const CheckResult* AuditReport::Find(const std::string& name) const {
  for (const CheckResult& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string AuditReport::ToString() const {
  std::string out;
  for (const CheckResult& c : checks_) {
    out += c.passed ? "PASS " : "FAIL ";
    out += c.name;
    if (!c.passed && !c.witness.empty()) {
      out += ": ";
      out += c.witness;
    }
    out += '\n';
  }
  return out;
}

}  // namespace dsc
