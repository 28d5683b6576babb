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

#include "dsc/instance.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>

#include "dsc/levels.hpp"

namespace dsc {

InstanceError::InstanceError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                        message
                                  : message),
      line_(line) {}

SetSystem::SetSystem(std::int32_t universe_size,
                     std::vector<std::vector<ElementId>> sets,
                     std::int64_t n_cap)
    : universe_size_(universe_size), sets_(std::move(sets)) {
  if (universe_size_ < 0) throw InstanceError("negative universe size");
  n_cap_ = n_cap > 0 ? n_cap : universe_size_;
  max_level_ = MaxLevelFor(n_cap_);
  incident_.assign(universe_size_, {});
  for (SetId s = 0; s < num_sets(); ++s) {
    std::vector<ElementId>& members = sets_[s];
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (ElementId e : members) {
      if (e < 0 || e >= universe_size_) {
        throw InstanceError("set " + std::to_string(s) + " has element " +
                            std::to_string(e) + " outside the universe");
      }
      incident_[e].push_back(s);
    }
  }
  for (ElementId e = 0; e < universe_size_; ++e) {
    if (incident_[e].empty()) {
      throw InstanceError("element " + std::to_string(e) +
                          " belongs to no set");
    }
    f_max_ = std::max<std::int32_t>(f_max_, incident_[e].size());
  }
}

bool SetSystem::Contains(SetId s, ElementId e) const {
  return std::binary_search(sets_[s].begin(), sets_[s].end(), e);
}

void ValidateStream(const SetSystem& sys, const UpdateStream& stream) {
  std::vector<bool> live(sys.universe_size(), false);
  std::int64_t live_count = 0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const Update& u = stream[i];
    const std::string step = " at step " + std::to_string(i + 1);
    if (u.element < 0 || u.element >= sys.universe_size()) {
      throw InstanceError("element " + std::to_string(u.element) +
                          " outside the universe" + step);
    }
    if (u.op == Op::kInsert) {
      if (live[u.element]) throw InstanceError("insert of live element" + step);
      live[u.element] = true;
      if (++live_count > sys.n_cap()) {
        throw InstanceError("live-set size exceeds n_cap" + step);
      }
    } else if (u.op == Op::kDelete) {
      if (!live[u.element]) {
        throw InstanceError("delete of dormant element" + step);
      }
      live[u.element] = false;
      --live_count;
    } else {
      throw InstanceError("idle update in stream" + step);
    }
  }
}

namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> Tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t ParseInt(std::string_view tok, int line) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw InstanceError("expected an integer, got '" + std::string(tok) + "'",
                        line);
  }
  return v;
}

struct Line {
  int number;
  std::string_view text;
};

}  // namespace

Instance ParseInstance(std::string_view text, std::int64_t n_cap) {
  std::vector<Line> lines;
  {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      ++number;
      std::string_view raw = text.substr(pos, nl - pos);
      const auto hash = raw.find('#');
      if (hash != std::string_view::npos) raw = raw.substr(0, hash);
      raw = Trim(raw);
      if (!raw.empty()) lines.push_back({number, raw});
      pos = nl + 1;
    }
  }
  std::size_t cur = 0;
  auto expect_keyword = [&](std::string_view keyword) -> std::vector<std::string_view> {
    if (cur >= lines.size()) {
      throw InstanceError("unexpected end of input, expected '" +
                          std::string(keyword) + "'");
    }
    std::vector<std::string_view> toks = Tokens(lines[cur].text);
    if (toks.empty() || toks[0] != keyword) {
      throw InstanceError("expected '" + std::string(keyword) + "'",
                          lines[cur].number);
    }
    return toks;
  };

  Instance out;
  auto header = expect_keyword("dsc");
  if (header.size() != 2 || header[1] != "1") {
    throw InstanceError("unsupported header, expected 'dsc 1'", lines[cur].number);
  }
  ++cur;
  auto uni = expect_keyword("universe");
  if (uni.size() != 2) throw InstanceError("malformed universe line", lines[cur].number);
  const std::int64_t universe = ParseInt(uni[1], lines[cur].number);
  if (universe < 0 || universe > INT32_MAX) {
    throw InstanceError("universe size out of range", lines[cur].number);
  }
  ++cur;
  auto sets_line = expect_keyword("sets");
  if (sets_line.size() != 2) throw InstanceError("malformed sets line", lines[cur].number);
  const std::int64_t m = ParseInt(sets_line[1], lines[cur].number);
  if (m < 0 || m > INT32_MAX) throw InstanceError("set count out of range", lines[cur].number);
  ++cur;

  std::vector<std::vector<ElementId>> sets(m);
  std::vector<bool> seen(m, false);
  for (std::int64_t i = 0; i < m; ++i) {
    if (cur >= lines.size()) throw InstanceError("unexpected end of input in set list");
    const Line& ln = lines[cur];
    const auto colon = ln.text.find(':');
    std::vector<std::string_view> head =
        Tokens(colon == std::string_view::npos ? ln.text : ln.text.substr(0, colon));
    if (colon == std::string_view::npos || head.size() != 2 || head[0] != "set") {
      throw InstanceError("malformed set line", ln.number);
    }
    const std::int64_t id = ParseInt(head[1], ln.number);
    if (id < 0 || id >= m) throw InstanceError("set id out of range", ln.number);
    if (seen[id]) throw InstanceError("duplicate set id " + std::to_string(id), ln.number);
    seen[id] = true;
    std::vector<ElementId>& members = sets[id];
    for (std::string_view tok : Tokens(ln.text.substr(colon + 1))) {
      const std::int64_t e = ParseInt(tok, ln.number);
      if (e < 0 || e >= universe) {
        throw InstanceError("element id " + std::to_string(e) +
                                " not below universe size",
                            ln.number);
      }
      members.push_back(static_cast<ElementId>(e));
    }
    std::vector<ElementId> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      out.warnings.push_back("line " + std::to_string(ln.number) + ": set " +
                             std::to_string(id) +
                             " lists an element more than once; deduplicated");
    }
    ++cur;
  }
  expect_keyword("stream");
  if (Tokens(lines[cur].text).size() != 1) {
    throw InstanceError("malformed stream line", lines[cur].number);
  }
  ++cur;

  std::vector<int> stream_lines;
  for (; cur < lines.size(); ++cur) {
    const Line& ln = lines[cur];
    Op op;
    if (ln.text[0] == '+') {
      op = Op::kInsert;
    } else if (ln.text[0] == '-') {
      op = Op::kDelete;
    } else {
      throw InstanceError("expected '+ <e>' or '- <e>'", ln.number);
    }
    std::vector<std::string_view> rest = Tokens(ln.text.substr(1));
    if (rest.size() != 1) throw InstanceError("expected one element per update", ln.number);
    const std::int64_t e = ParseInt(rest[0], ln.number);
    if (e < 0 || e >= universe) {
      throw InstanceError("element id " + std::to_string(e) +
                              " not below universe size",
                          ln.number);
    }
    out.stream.push_back({op, static_cast<ElementId>(e)});
    stream_lines.push_back(ln.number);
  }

  try {
    out.system = SetSystem(static_cast<std::int32_t>(universe), std::move(sets), n_cap);
  } catch (const InstanceError& err) {
    throw InstanceError(err.what());
  }
  try {
    ValidateStream(out.system, out.stream);
  } catch (const InstanceError& err) {
    // Recover the step to point at its source line.
    const std::string msg = err.what();
    const auto at = msg.rfind("at step ");
    int line = 0;
    if (at != std::string::npos) {
      const std::size_t step = std::stoul(msg.substr(at + 8));
      if (step >= 1 && step <= stream_lines.size()) line = stream_lines[step - 1];
    }
    throw InstanceError(msg, line);
  }
  return out;
}

Instance ReadInstanceFile(const std::string& path, std::int64_t n_cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseInstance(buf.str(), n_cap);
}

std::string SerializeInstance(const SetSystem& sys, const UpdateStream& stream) {
  std::string out;
  out += "dsc 1\n";
  out += "universe " + std::to_string(sys.universe_size()) + "\n";
  out += "sets " + std::to_string(sys.num_sets()) + "\n";
  for (SetId s = 0; s < sys.num_sets(); ++s) {
    out += "set " + std::to_string(s) + ":";
    for (ElementId e : sys.set(s)) {
      out += ' ';
      out += std::to_string(e);
    }
    out += '\n';
  }
  out += "stream\n";
  for (const Update& u : stream) {
    out += OpSymbol(u.op);
    out += ' ';
    out += std::to_string(u.element);
    out += '\n';
  }
  return out;
}

const char* PatternName(Pattern p) {
  switch (p) {
    case Pattern::kInsertOnly:
      return "insert-only";
    case Pattern::kSlidingWindow:
      return "sliding-window";
    case Pattern::kRandomChurn:
      return "random-churn";
  }
  return "?";
}

Pattern ParsePattern(std::string_view name) {
  if (name == "insert-only") return Pattern::kInsertOnly;
  if (name == "sliding-window") return Pattern::kSlidingWindow;
  if (name == "random-churn") return Pattern::kRandomChurn;
  throw InstanceError("unknown pattern '" + std::string(name) + "'");
}

namespace {

std::int64_t Draw(std::mt19937_64& rng, std::int64_t n) {
  return std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng);
}

// Live/dormant pools supporting uniform sampling and O(1) removal.
class Pool {
 public:
  explicit Pool(std::int32_t n) : pos_(n, -1) {}
  void Add(ElementId e) {
    pos_[e] = static_cast<std::int32_t>(items_.size());
    items_.push_back(e);
  }
  void Remove(ElementId e) {
    const std::int32_t p = pos_[e];
    items_[p] = items_.back();
    pos_[items_[p]] = p;
    items_.pop_back();
    pos_[e] = -1;
  }
  bool Has(ElementId e) const { return pos_[e] >= 0; }
  std::size_t size() const { return items_.size(); }
  ElementId Sample(std::mt19937_64& rng) const {
    return items_[Draw(rng, static_cast<std::int64_t>(items_.size()))];
  }

 private:
  std::vector<ElementId> items_;
  std::vector<std::int32_t> pos_;
};

}  // namespace

Instance GenerateWorkload(const WorkloadParams& p) {
  if (p.universe_size < 1) throw InstanceError("universe size must be positive");
  if (p.num_sets < 1) throw InstanceError("need at least one set");
  if (p.freq < 1) throw InstanceError("freq must be at least 1");
  if (p.freq > p.num_sets) throw InstanceError("freq exceeds the number of sets");
  if (p.steps < 0) throw InstanceError("negative step count");

  std::mt19937_64 rng(p.seed);
  std::vector<std::vector<ElementId>> sets(p.num_sets);
  std::vector<SetId> chosen;
  for (ElementId e = 0; e < p.universe_size; ++e) {
    const std::int64_t count = 1 + Draw(rng, p.freq);
    chosen.clear();
    while (static_cast<std::int64_t>(chosen.size()) < count) {
      const SetId s = static_cast<SetId>(Draw(rng, p.num_sets));
      if (std::find(chosen.begin(), chosen.end(), s) == chosen.end()) {
        chosen.push_back(s);
      }
    }
    for (SetId s : chosen) sets[s].push_back(e);
  }

  Instance out;
  out.system = SetSystem(p.universe_size, std::move(sets));
  UpdateStream& stream = out.stream;
  Pool live(p.universe_size);
  Pool dormant(p.universe_size);
  for (ElementId e = 0; e < p.universe_size; ++e) dormant.Add(e);
  auto insert = [&](ElementId e) {
    dormant.Remove(e);
    live.Add(e);
    stream.push_back({Op::kInsert, e});
  };
  auto erase = [&](ElementId e) {
    live.Remove(e);
    dormant.Add(e);
    stream.push_back({Op::kDelete, e});
  };

  switch (p.pattern) {
    case Pattern::kInsertOnly: {
      const std::int64_t n = std::min<std::int64_t>(p.steps, p.universe_size);
      for (std::int64_t i = 0; i < n; ++i) insert(dormant.Sample(rng));
      break;
    }
    case Pattern::kSlidingWindow: {
      const std::int64_t window =
          p.window > 0 ? std::min(p.window, p.universe_size)
                       : std::max<std::int32_t>(1, p.universe_size / 2);
      std::deque<ElementId> order;
      bool delete_next = true;
      for (std::int64_t i = 0; i < p.steps; ++i) {
        if (static_cast<std::int64_t>(order.size()) < window && i < window) {
          order.push_back(dormant.Sample(rng));
          insert(order.back());
        } else if (delete_next || dormant.size() == 0) {
          erase(order.front());
          order.pop_front();
          delete_next = false;
        } else {
          order.push_back(dormant.Sample(rng));
          insert(order.back());
          delete_next = true;
        }
      }
      break;
    }
    case Pattern::kRandomChurn: {
      for (std::int64_t i = 0; i < p.steps; ++i) {
        const ElementId e = static_cast<ElementId>(Draw(rng, p.universe_size));
        if (live.Has(e)) {
          erase(e);
        } else {
          insert(e);
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace dsc
