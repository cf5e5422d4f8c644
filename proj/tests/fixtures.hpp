#pragma once

// Shared fixtures: the three-node graph and random finite presentations.

#include <random>
#include <set>

#include "epp/presentation.hpp"
#include "support.hpp"

namespace epp::test {

inline Alphabet digits() { return Alphabet({"0", "1", "2"}); }

/// Domain {0,1,2}, edge = {(0,1),(1,2)}, i = {0}, f = {2}.
inline AutomaticPresentation graph_presentation() {
  Alphabet al = digits();
  AutomaticPresentation p{Signature{{"edge", 2}, {"i", 1}, {"f", 1}}, al,
                          regex_to_automaton("0|1|2", al), {}};
  std::vector<Tuple> edge{tuple(al, {"0", "1"}), tuple(al, {"1", "2"})};
  std::vector<Tuple> i{tuple(al, {"0"})}, f{tuple(al, {"2"})};
  p.relations.emplace("edge", from_tuples(al, 2, edge));
  p.relations.emplace("i", from_tuples(al, 1, i));
  p.relations.emplace("f", from_tuples(al, 1, f));
  return p;
}

/// Random finite domain (1..max_size words of length <= 3 over {a,b}) with
/// random relations per the given arities.
inline AutomaticPresentation random_presentation(std::mt19937& rng, const Signature& sig,
                                                 std::size_t max_size = 12,
                                                 std::vector<Word>* elements = nullptr) {
  Alphabet al = ab();
  std::vector<Word> all = words_upto(al, 3);
  std::shuffle(all.begin(), all.end(), rng);
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
  std::vector<Word> dom(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<Tuple> dom_tuples;
  for (const auto& w : dom) dom_tuples.push_back({w});
  AutomaticPresentation p{sig, al, from_tuples(al, 1, dom_tuples), {}};
  std::uniform_real_distribution<double> density(0.1, 0.7);
  for (const auto& [name, arity] : sig.entries()) {
    double d = arity >= 3 ? density(rng) / 4 : density(rng);
    p.relations.emplace(name, random_relation(rng, al, dom, arity, d));
  }
  if (elements) *elements = dom;
  return p;
}

}  // namespace epp::test

#include "epp/epistemic.hpp"

namespace epp::test {

inline std::shared_ptr<const Interpretation> interp(Interpretation i) {
  return std::make_shared<const Interpretation>(std::move(i));
}

/// One world s, agent a reflexive, over {a,b}*: L0 = a*, L1 = b*, C = ∅ and
/// the target L given as a regex.
inline EpistemicModel lang_model(const std::string& target = "∅") {
  Alphabet al = ab();
  EpistemicModel m;
  m.agents = {"a"};
  m.worlds = {"s"};
  m.access["a"] = {{"s", "s"}};
  m.signature = Signature{{"L", 1}, {"L0", 1}, {"L1", 1}, {"C", 1}};
  m.alphabet = al;
  m.domain = all_words(al);
  m.interpretations["s"] = interp({{"L", regex_to_automaton(target, al)},
                                   {"L0", regex_to_automaton("a*", al)},
                                   {"L1", regex_to_automaton("b*", al)},
                                   {"C", regex_to_automaton("∅", al)}});
  return m;
}

/// Events U0 (C := C ∨ L0), U1 (C := C ∨ L1), CP (C := ¬C); all
/// preconditions true, access reflexive.
inline ActionModel lang_action(const EpistemicModel& m) {
  ActionModel a;
  a.events = {"U0", "U1", "CP"};
  for (const auto& e : a.events) a.access["a"].emplace(e, e);
  a.post["U0"]["C"] = parse_formula("C(x1) | L0(x1)", m.signature);
  a.post["U1"]["C"] = parse_formula("C(x1) | L1(x1)", m.signature);
  a.post["CP"]["C"] = parse_formula("!C(x1)", m.signature);
  return a;
}

/// The graph as a single-world model (world s, agent a reflexive).
inline EpistemicModel graph_model() {
  AutomaticPresentation g = graph_presentation();
  EpistemicModel m;
  m.agents = {"a"};
  m.worlds = {"s"};
  m.access["a"] = {{"s", "s"}};
  m.signature = g.signature;
  m.alphabet = g.alphabet;
  m.domain = g.domain;
  m.interpretations["s"] = interp(Interpretation(g.relations.begin(), g.relations.end()));
  return m;
}

/// Single event closing edge under one composition step.
inline ActionModel closure_action(const Signature& sig) {
  ActionModel a;
  a.events = {"t"};
  a.access["a"] = {{"t", "t"}};
  a.post["t"]["edge"] = parse_formula("edge(x1,x2) | exists y. (edge(x1,y) & edge(y,x2))", sig);
  return a;
}

/// Random model: 1..3 worlds named w0.., agents from `agents`, shared
/// random finite domain, random access and interpretations.
inline EpistemicModel random_model(std::mt19937& rng, const Signature& sig, const std::vector<std::string>& agents,
                                   std::vector<Word>* elements, std::size_t max_worlds = 3) {
  std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_worlds)(rng);
  std::vector<Word> dom;
  AutomaticPresentation base = random_presentation(rng, sig, 6, &dom);
  EpistemicModel m;
  m.agents = agents;
  m.signature = sig;
  m.alphabet = base.alphabet;
  m.domain = base.domain;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < n; ++i) m.worlds.push_back("w" + std::to_string(i));
  for (const auto& a : agents) {
    for (const auto& u : m.worlds) {
      for (const auto& v : m.worlds) {
        if (coin(rng)) m.access[a].emplace(u, v);
      }
    }
  }
  for (const auto& w : m.worlds) {
    Interpretation i;
    std::uniform_real_distribution<double> density(0.1, 0.7);
    for (const auto& [name, arity] : sig.entries()) i.emplace(name, random_relation(rng, m.alphabet, dom, arity, density(rng)));
    m.interpretations[w] = interp(std::move(i));
  }
  if (elements) *elements = dom;
  return m;
}

}  // namespace epp::test

namespace epp::test {

/// Random action model with quantifier-free posts over x1..xk and closed
/// (possibly quantified) preconditions.
template <class Gen>
ActionModel random_qf_action(std::mt19937& rng, Gen& gen, const Signature& sig, const std::vector<std::string>& agents,
                             std::size_t events = 2) {
  ActionModel a;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < events; ++i) a.events.push_back("e" + std::to_string(i));
  for (const auto& ag : agents) {
    for (const auto& e : a.events) {
      for (const auto& f : a.events) {
        if (e == f || coin(rng)) a.access[ag].emplace(e, f);
      }
    }
  }
  for (const auto& e : a.events) {
    if (coin(rng)) a.pre[e] = gen.generate_qf(1, {});
    for (const auto& [name, arity] : sig.entries()) {
      if (coin(rng)) a.post[e][name] = gen.generate_qf(2, post_variables(arity));
    }
  }
  return a;
}

}  // namespace epp::test
