#pragma once

// Direct Turing-machine simulation on configuration words u·q·v.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "epp/demos.hpp"

namespace epp::test {

using Config = std::vector<std::string>;

inline bool is_state(const TmDescription& tm, const std::string& x) {
  return std::find(tm.states.begin(), tm.states.end(), x) != tm.states.end();
}

inline std::optional<Config> tm_step(const TmDescription& tm, const Config& c) {
  std::size_t head = 0;
  while (!is_state(tm, c[head])) ++head;
  std::vector<std::string> tape(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(head));
  tape.insert(tape.end(), c.begin() + static_cast<std::ptrdiff_t>(head) + 1, c.end());
  const std::string q = c[head];
  if (head >= tape.size()) tape.resize(head + 1, tm.blank);
  auto it = tm.delta.find({q, tape[head]});
  if (it == tm.delta.end()) return std::nullopt;
  tape[head] = it->second.write;
  if (it->second.move == TmDescription::Move::R) {
    ++head;
  } else if (head > 0) {
    --head;
  }
  if (head > tape.size()) tape.resize(head, tm.blank);
  Config out(tape.begin(), tape.begin() + static_cast<std::ptrdiff_t>(std::min(head, tape.size())));
  while (out.size() < head) out.push_back(tm.blank);
  out.push_back(it->second.state);
  std::vector<std::string> rest(tape.begin() + static_cast<std::ptrdiff_t>(std::min(head, tape.size())), tape.end());
  while (!rest.empty() && rest.back() == tm.blank) rest.pop_back();
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

/// Canonical configurations with at most n letters.
inline std::vector<Config> tm_configs_upto(const TmDescription& tm, std::size_t n) {
  std::vector<Config> out;
  std::vector<Config> tapes{{}};
  for (std::size_t i = 0; i < tapes.size(); ++i) {
    if (tapes[i].size() + 1 >= n) continue;
    for (const auto& g : tm.tape) {
      auto t = tapes[i];
      t.push_back(g);
      tapes.push_back(std::move(t));
    }
  }
  for (const auto& t : tapes) {
    for (std::size_t head = 0; head <= t.size(); ++head) {
      if (head < t.size() && t.back() == tm.blank) continue;
      for (const auto& q : tm.states) {
        Config c(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(head));
        c.push_back(q);
        c.insert(c.end(), t.begin() + static_cast<std::ptrdiff_t>(head), t.end());
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

/// δ(q0,a) = (qacc,a,R).
inline TmDescription one_step_tm() {
  TmDescription tm;
  tm.states = {"q0", "qacc"};
  tm.input = {"a"};
  tm.tape = {"a", "⊔"};
  tm.initial = "q0";
  tm.accepting = {"qacc"};
  tm.delta[{"q0", "a"}] = {"qacc", "a", TmDescription::Move::R};
  return tm;
}

/// Walks right forever; the accepting state is never entered.
inline TmDescription runaway_tm() {
  TmDescription tm;
  tm.states = {"q0", "qacc"};
  tm.input = {"a"};
  tm.tape = {"a", "⊔"};
  tm.initial = "q0";
  tm.accepting = {"qacc"};
  tm.delta[{"q0", "a"}] = {"q0", "a", TmDescription::Move::R};
  tm.delta[{"q0", "⊔"}] = {"q0", "⊔", TmDescription::Move::R};
  return tm;
}

}  // namespace epp::test
