#pragma once

// Test-only helpers: word enumeration, an independent membership oracle and
// random automaton generators.

#include <initializer_list>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "epp/automata.hpp"

namespace epp::test {

inline Alphabet ab() { return Alphabet({"a", "b"}); }

inline Word word(const Alphabet& alphabet, const std::string& text) {
  return alphabet.parse_word(text);
}

inline Tuple tuple(const Alphabet& alphabet, std::initializer_list<std::string> words) {
  Tuple out;
  for (const auto& w : words) out.push_back(alphabet.parse_word(w));
  return out;
}

/// All words over the alphabet of length <= max_len, length-lex order.
inline std::vector<Word> words_upto(const Alphabet& alphabet, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len) continue;
    for (Symbol s = 0; s < alphabet.size(); ++s) {
      Word w = out[i];
      w.push_back(s);
      out.push_back(std::move(w));
    }
  }
  return out;
}

/// Membership by direct simulation of the edge lists on the padded columns.
inline bool member(const Automaton& a, const Tuple& words) {
  std::size_t len = 0;
  for (const auto& w : words) len = std::max(len, w.size());
  std::set<State> current(a.initial().begin(), a.initial().end());
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Symbol> column;
    for (const auto& w : words) column.push_back(i < w.size() ? w[i] : a.alphabet().pad());
    std::set<State> next;
    for (State s : current) {
      for (auto [label, dst] : a.edges(s)) {
        if (a.codec().decode(label) == column) next.insert(dst);
      }
    }
    current = std::move(next);
  }
  for (State s : current) {
    if (a.is_accepting(s)) return true;
  }
  return false;
}

/// Words accepted among all words up to max_len (1-track).
inline std::set<Word> language_upto(const Automaton& a, std::size_t max_len) {
  std::set<Word> out;
  for (const auto& w : words_upto(a.alphabet(), max_len)) {
    if (member(a, {w})) out.insert(w);
  }
  return out;
}

/// Random 1-track NFA.
inline Automaton random_nfa(std::mt19937& rng, const Alphabet& alphabet, std::size_t states,
                            double density = 0.3) {
  std::bernoulli_distribution coin(density), half(0.4);
  Automaton a(alphabet, 1);
  for (std::size_t s = 0; s < states; ++s) a.add_state(half(rng));
  a.add_initial(0);
  if (states > 1 && half(rng)) a.add_initial(1);
  for (State s = 0; s < states; ++s) {
    for (Symbol c = 0; c < alphabet.size(); ++c) {
      for (State d = 0; d < states; ++d) {
        if (coin(rng)) a.add_transition(s, Label{c}, d);
      }
    }
  }
  a.finish();
  return a;
}

/// Random relation over a finite domain given as a word list.
inline Automaton random_relation(std::mt19937& rng, const Alphabet& alphabet,
                                 const std::vector<Word>& domain, std::size_t arity,
                                 double density, std::vector<Tuple>* chosen = nullptr) {
  std::bernoulli_distribution coin(density);
  std::vector<Tuple> tuples;
  Tuple current(arity);
  std::size_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) total *= domain.size();
  for (std::size_t index = 0; index < total; ++index) {
    std::size_t rest = index;
    for (std::size_t i = 0; i < arity; ++i) {
      current[i] = domain[rest % domain.size()];
      rest /= domain.size();
    }
    if (coin(rng)) tuples.push_back(current);
  }
  if (chosen) *chosen = tuples;
  return from_tuples(alphabet, arity, tuples);
}

/// The 2-track identity relation on all words.
inline Automaton equality_relation(const Alphabet& alphabet) {
  Automaton eq(alphabet, 2);
  State s = eq.add_state(true);
  eq.add_initial(s);
  for (Symbol c = 0; c < alphabet.size(); ++c) {
    std::vector<Symbol> col{c, c};
    eq.add_transition(s, col, s);
  }
  eq.finish();
  return eq;
}

}  // namespace epp::test
