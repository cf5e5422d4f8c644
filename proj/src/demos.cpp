#include "epp/demos.hpp"

#include <algorithm>
#include <set>

#include "epp/errors.hpp"

namespace epp {

PlanningInstance build_language_demo(const std::vector<std::string>& generators, const std::string& target,
                                     bool concat, const std::vector<std::string>& alphabet) {
  if (generators.empty()) throw InputError("at least one generator is required");
  Alphabet al(alphabet);
  PlanningInstance out;
  EpistemicModel& m = out.model;
  m.agents = {"a"};
  m.worlds = {"s"};
  m.access["a"] = {{"s", "s"}};
  m.alphabet = al;
  m.domain = all_words(al);
  m.signature.add("L", 1);
  m.signature.add("C", 1);
  Interpretation interp;
  interp.emplace("L", regex_to_automaton(target, al));
  interp.emplace("C", regex_to_automaton("∅", al));
  std::vector<Automaton> langs;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const std::string name = "L" + std::to_string(i);
    m.signature.add(name, 1);
    langs.push_back(regex_to_automaton(generators[i], al));
    interp.emplace(name, langs.back());
  }
  m.interpretations["s"] = std::make_shared<const Interpretation>(std::move(interp));

  ActionModel& a = out.action;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const std::string e = "U" + std::to_string(i);
    a.events.push_back(e);
    a.post[e]["C"] = Formula::disjunction(Formula::atom("C", {"x1"}), Formula::atom("L" + std::to_string(i), {"x1"}));
  }
  a.events.push_back("CP");
  a.post["CP"]["C"] = Formula::negation(Formula::atom("C", {"x1"}));
  if (concat) {
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const std::string e = "concat" + std::to_string(i);
      a.events.push_back(e);
      a.native[e]["C"] = NativeTransformer{NativeTransformer::Op::ConcatRight, generators[i], langs[i]};
    }
  }
  for (const auto& e : a.events) a.access["a"].emplace(e, e);
  out.goal = Formula::forall("x", Formula::equivalence(Formula::atom("C", {"x"}), Formula::atom("L", {"x"})));
  out.world = "s";
  return out;
}

void check_tm(const TmDescription& tm) {
  std::set<std::string> states(tm.states.begin(), tm.states.end());
  std::set<std::string> tape(tm.tape.begin(), tm.tape.end());
  if (states.size() != tm.states.size() || tape.size() != tm.tape.size()) throw InputError("duplicate TM letters");
  for (const auto& s : tm.states) {
    if (tape.count(s)) throw InputError("TM state " + s + " is also a tape symbol");
  }
  if (!tape.count(tm.blank)) throw InputError("blank missing from the tape alphabet");
  for (const auto& a : tm.input) {
    if (a == tm.blank) throw InputError("blank in the input alphabet");
    if (!tape.count(a)) throw InputError("input symbol " + a + " missing from the tape alphabet");
  }
  if (!states.count(tm.initial)) throw InputError("unknown initial state " + tm.initial);
  for (const auto& s : tm.accepting) {
    if (!states.count(s)) throw InputError("unknown accepting state " + s);
  }
  for (const auto& [key, act] : tm.delta) {
    if (!states.count(key.first) || !tape.count(key.second) || !states.count(act.state) || !tape.count(act.write)) {
      throw InputError("transition (" + key.first + "," + key.second + ") uses unknown letters");
    }
  }
  for (const auto& l : tm.tape) {
    if (l == "_" || l == "#") throw InputError("letter " + l + " is reserved");
  }
}

namespace {

Alphabet tm_alphabet(const TmDescription& tm) {
  std::vector<std::string> letters = tm.tape;
  letters.insert(letters.end(), tm.states.begin(), tm.states.end());
  return Alphabet(letters);
}

// Γ* S (ε | Γ* (Γ \ blank)) for a set S of state letters.
Automaton configurations_in(const TmDescription& tm, const Alphabet& al, const std::vector<std::string>& states) {
  Automaton a(al, 1);
  State left = a.add_state(false), right = a.add_state(true), tail = a.add_state(false);
  a.add_initial(left);
  const Symbol blank = *al.find(tm.blank);
  for (const auto& g : tm.tape) {
    Symbol s = *al.find(g);
    a.add_transition(left, Label{s}, left);
    State dst = s == blank ? tail : right;
    a.add_transition(right, Label{s}, dst);
    a.add_transition(tail, Label{s}, dst);
  }
  for (const auto& q : states) a.add_transition(left, Label{*al.find(q)}, right);
  a.finish();
  return minimize(a);
}

}  // namespace

Automaton tm_configurations(const TmDescription& tm) {
  check_tm(tm);
  return configurations_in(tm, tm_alphabet(tm), tm.states);
}

Automaton tm_step_relation(const TmDescription& tm) {
  check_tm(tm);
  const Alphabet al = tm_alphabet(tm);
  const Symbol pad = al.pad();
  const Symbol blank = *al.find(tm.blank);
  auto sym = [&](const std::string& l) { return *al.find(l); };

  Automaton r(al, 2);
  // copy: identical prefix before the window; start: window at the left end
  const State copy = r.add_state(false), start = r.add_state(false);
  // nonempty suffix after the window: last letter copied non-blank
  // (accepting) or blank; suffix_blank is also the entry state
  const State suffix_ok = r.add_state(true), suffix_blank = r.add_state(false);
  r.add_initial(copy);
  r.add_initial(start);
  for (const auto& g : tm.tape) {
    Symbol s = sym(g);
    std::vector<Symbol> col{s, s};
    r.add_transition(copy, col, copy);
    State dst = s == blank ? suffix_blank : suffix_ok;
    r.add_transition(suffix_ok, col, dst);
    r.add_transition(suffix_blank, col, dst);
  }

  // Reads in[i] / out[i] column by column from `from`; the last column leads
  // to `to`, or to a fresh accepting state when `to` is unset.
  auto window = [&](State from, const std::vector<Symbol>& in, const std::vector<Symbol>& out,
                    std::optional<State> to) {
    const std::size_t n = std::max(in.size(), out.size());
    State cur = from;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Symbol> col{i < in.size() ? in[i] : pad, i < out.size() ? out[i] : pad};
      State next = i + 1 < n ? r.add_state(false) : (to ? *to : r.add_state(true));
      r.add_transition(cur, col, next);
      cur = next;
    }
  };
  // Drops trailing blanks after the state letter.
  auto trimmed = [&](std::vector<Symbol> w) {
    while (!w.empty() && w.back() == blank) w.pop_back();
    return w;
  };

  for (const auto& [key, act] : tm.delta) {
    const Symbol q = sym(key.first), a = sym(key.second), q2 = sym(act.state), b = sym(act.write);
    const bool read_blank = a == blank;
    // The window in the input with the read letter explicit (followed by a
    // suffix or ending a non-blank tape), or implicit (tape ends at the head).
    auto emit = [&](State from, const std::vector<Symbol>& in_explicit, const std::vector<Symbol>& out) {
      window(from, in_explicit, out, suffix_blank);
      if (!read_blank) window(from, in_explicit, trimmed(out), std::nullopt);
      if (read_blank) {
        std::vector<Symbol> in_implicit(in_explicit.begin(), in_explicit.end() - 1);
        window(from, in_implicit, trimmed(out), std::nullopt);
      }
    };
    if (act.move == TmDescription::Move::R) {
      emit(copy, {q, a}, {b, q2});
    } else {
      for (const auto& g : tm.tape) {
        Symbol c = sym(g);
        emit(copy, {c, q, a}, {q2, c, b});
      }
      emit(start, {q, a}, {q2, b});
    }
  }
  r.finish();
  return minimize(r);
}

PlanningInstance build_tm_config_graph(const TmDescription& tm) {
  check_tm(tm);
  const Alphabet al = tm_alphabet(tm);
  PlanningInstance out;
  EpistemicModel& m = out.model;
  m.agents = {"a"};
  m.worlds = {"G"};
  m.access["a"] = {{"G", "G"}};
  m.alphabet = al;
  m.domain = configurations_in(tm, al, tm.states);
  m.signature = Signature{{"p", 2}, {"i", 1}, {"f", 1}};
  Interpretation interp;
  interp.emplace("p", tm_step_relation(tm));
  Automaton initial(al, 1);
  const State i0 = initial.add_state(false), i1 = initial.add_state(true);
  initial.add_initial(i0);
  initial.add_transition(i0, Label{*al.find(tm.initial)}, i1);
  for (const auto& x : tm.input) initial.add_transition(i1, Label{*al.find(x)}, i1);
  initial.finish();
  interp.emplace("i", minimize(initial));
  interp.emplace("f", configurations_in(tm, al, tm.accepting));
  m.interpretations["G"] = std::make_shared<const Interpretation>(std::move(interp));

  ActionModel& a = out.action;
  a.events = {"close"};
  a.access["a"] = {{"close", "close"}};
  a.post["close"]["p"] = Formula::disjunction(
      Formula::atom("p", {"x1", "x2"}),
      Formula::exists("y", Formula::conjunction(Formula::atom("p", {"x1", "y"}), Formula::atom("p", {"y", "x2"}))));
  out.goal = Formula::exists(
      "x", Formula::exists("y", Formula::conjunction(Formula::conjunction(Formula::atom("i", {"x"}),
                                                                         Formula::atom("p", {"x", "y"})),
                                                     Formula::atom("f", {"y"}))));
  out.world = "G";
  return out;
}

}  // namespace epp
