#include "epp/planner.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>
#include <tuple>
#include <unordered_map>

#include "epp/errors.hpp"

namespace epp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void require_decidable_fragment(const ActionModel& a) {
  if (a.has_natives()) {
    throw FragmentError("native transformers are outside the decidable fragment; use bfs_plan");
  }
  if (a.modal_conditions()) throw FragmentError("modal pre- or post-condition in the action model");
  if (!a.quantifier_free_posts()) {
    throw FragmentError("post-conditions must be quantifier-free for the decision procedure; use bfs_plan");
  }
}

// Epistemic and starting-world relations for a deterministic history
// automaton whose state 0 is the initial state and reads only world letters.
HistorySkeleton make_skeleton(const EpistemicModel& m, const ActionModel& a, const Automaton& hist,
                              std::vector<InterpretationPtr> interp) {
  const Alphabet& letters = hist.alphabet();
  HistorySkeleton sk{letters, hist, std::move(interp), {}, {}};

  // ep_a: same-length pairs of histories, worlds related by R_a, events by Q_a.
  for (const auto& agent : m.agents) {
    Automaton ep(letters, 2);
    std::map<std::pair<State, State>, State> index;
    std::deque<std::pair<State, State>> queue;
    auto state_of = [&](State p, State r) {
      auto [it, fresh] = index.try_emplace({p, r}, 0);
      if (fresh) {
        it->second = ep.add_state(p != 0);
        queue.emplace_back(p, r);
      }
      return it->second;
    };
    ep.add_initial(state_of(0, 0));
    while (!queue.empty()) {
      auto [p, r] = queue.front();
      queue.pop_front();
      const State src = index.at({p, r});
      const Relation& rel = p == 0 ? m.relation(agent) : a.relation(agent);
      for (const auto& [u, v] : rel) {
        Symbol su = *letters.find(u), sv = *letters.find(v);
        auto p2 = hist.step(p, Label{su});
        auto r2 = hist.step(r, Label{sv});
        if (!p2 || !r2) continue;
        std::vector<Symbol> column{su, sv};
        ep.add_transition(src, column, state_of(*p2, *r2));
      }
    }
    ep.finish();
    sk.ep.emplace(agent, ep);
  }

  for (const auto& w : m.worlds) {
    Automaton from(letters, 1);
    for (State s = 0; s < hist.state_count(); ++s) from.add_state(hist.is_accepting(s));
    from.add_initial(0);
    const Symbol sw = *letters.find(w);
    for (State s = 0; s < hist.state_count(); ++s) {
      for (auto [label, dst] : hist.edges(s)) {
        if (s != 0 || label == Label{sw}) from.add_transition(s, label, dst);
      }
    }
    from.finish();
    sk.from.emplace(w, from);
  }

  return sk;
}

}  // namespace

std::optional<std::size_t> ClassQuotient::class_of(const std::vector<std::string>& history) const {
  if (history.empty()) return std::nullopt;
  auto w = world_class.find(history[0]);
  if (w == world_class.end()) return std::nullopt;
  std::size_t c = w->second;
  for (std::size_t i = 1; i < history.size(); ++i) {
    auto e = std::find(events.begin(), events.end(), history[i]);
    if (e == events.end()) throw InputError("unknown event " + history[i]);
    if (c >= delta.size()) return std::nullopt;
    auto next = delta[c][static_cast<std::size_t>(e - events.begin())];
    if (!next) return std::nullopt;
    c = *next;
  }
  return c;
}

InterpretationPtr apply_event_to_class(Updater& updater, const InterpretationPtr& cls, const std::string& event) {
  return updater.apply(cls, event);
}

ClassQuotient class_quotient(const EpistemicModel& m, Updater& updater, std::size_t cap) {
  ClassQuotient q;
  q.events = updater.action().events;
  std::unordered_map<const Interpretation*, std::size_t> id;
  std::deque<std::size_t> queue;
  auto class_id = [&](const InterpretationPtr& p) -> std::optional<std::size_t> {
    auto it = id.find(p.get());
    if (it != id.end()) return it->second;
    if (q.classes.size() >= cap) {
      q.complete = false;
      return std::nullopt;
    }
    std::size_t c = q.classes.size();
    q.classes.push_back(p);
    q.delta.emplace_back(q.events.size());
    id.emplace(p.get(), c);
    queue.push_back(c);
    return c;
  };
  for (const auto& w : m.worlds) {
    auto c = class_id(updater.intern(m.interpretation(w)));
    if (!c) return q;
    q.world_class[w] = *c;
  }
  while (!queue.empty()) {
    std::size_t c = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < q.events.size(); ++i) {
      InterpretationPtr next = apply_event_to_class(updater, q.classes[c], q.events[i]);
      if (!next) continue;
      auto d = class_id(next);
      if (!d) return q;
      q.delta[c][i] = *d;
    }
  }
  return q;
}

ClassQuotient class_quotient(const EpistemicModel& m, const ActionModel& a, std::size_t cap) {
  Updater updater(m, a);
  return class_quotient(m, updater, cap);
}

Alphabet history_letters(const EpistemicModel& m, const ActionModel& a) {
  std::vector<std::string> letters = m.worlds;
  for (const auto& e : a.events) {
    if (std::find(m.worlds.begin(), m.worlds.end(), e) != m.worlds.end()) {
      throw InputError("event " + e + " has the same name as a world");
    }
    letters.push_back(e);
  }
  return Alphabet(letters);
}

Automaton class_automaton(const EpistemicModel& m, const ActionModel& a, const ClassQuotient& q,
                          const std::optional<std::vector<std::size_t>>& final) {
  Alphabet letters = history_letters(m, a);
  Automaton out(letters, 1);
  out.add_initial(out.add_state(false));
  std::set<std::size_t> accept;
  if (final) accept.insert(final->begin(), final->end());
  for (std::size_t c = 0; c < q.size(); ++c) out.add_state(!final || accept.count(c));
  for (const auto& w : m.worlds) {
    out.add_transition(0, Label{*letters.find(w)}, static_cast<State>(q.world_class.at(w) + 1));
  }
  for (std::size_t c = 0; c < q.delta.size(); ++c) {
    for (std::size_t i = 0; i < q.events.size(); ++i) {
      if (q.delta[c][i]) {
        out.add_transition(static_cast<State>(c + 1), Label{*letters.find(q.events[i])},
                           static_cast<State>(*q.delta[c][i] + 1));
      }
    }
  }
  out.finish();
  return out;
}

HistoryPresentation history_presentation(const EpistemicModel& m, const ActionModel& a, const PlanOptions& options) {
  Updater updater(m, a, options.compile);
  ClassQuotient q = class_quotient(m, updater, options.class_cap);
  if (!q.complete) {
    throw ResourceLimit("interpretation classes exceed the cap of " + std::to_string(options.class_cap));
  }
  Automaton hist = class_automaton(m, a, q);
  const Alphabet& letters = hist.alphabet();

  std::vector<InterpretationPtr> interp{nullptr};
  for (const auto& c : q.classes) interp.push_back(c);
  HistorySkeleton sk = make_skeleton(m, a, hist, std::move(interp));
  return HistoryPresentation{history_structure(m, sk, options.compile.limits), letters, hist, std::move(q)};
}

void check_goal(const EpistemicModel& m, const Formula& goal) {
  check_atoms(goal, m.signature, "goal");
  for (const auto& a : agents(goal)) {
    if (std::find(m.agents.begin(), m.agents.end(), a) == m.agents.end()) throw InputError("goal: unknown agent " + a);
  }
  if (!classify(goal).closed) throw InputError("goal must be a closed formula");
}

Automaton solution_automaton(const HistoryPresentation& hp, const EpistemicModel& m, const std::string& world,
                             const Formula& goal, const PlanOptions& options) {
  check_goal(m, goal);
  if (!hp.quotient.world_class.count(world)) throw InputError("unknown world " + world);
  const std::string y = fresh_variable(goal, "y");
  Formula query = Formula::conjunction(standard_translation(goal, y), Formula::atom(history_names::from(world), {y}));
  Automaton sols = compile(hp.structure, query, {y}, options.compile);
  sols = intersect(sols, with_alphabet(hp.histories, hp.structure.alphabet), options.compile.limits);
  return minimize(restrict_alphabet(sols, hp.letters), options.compile.limits);
}

Automaton solution_automaton(const EpistemicModel& m, const std::string& world, const ActionModel& a,
                             const Formula& goal, const PlanOptions& options) {
  require_decidable_fragment(a);
  check_goal(m, goal);
  return solution_automaton(history_presentation(m, a, options), m, world, goal, options);
}

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "unknown";
}

PlanResult decide_plan(const EpistemicModel& m, const std::string& world, const ActionModel& a, const Formula& goal,
                       const PlanOptions& options) {
  const auto t0 = Clock::now();
  require_decidable_fragment(a);
  check_goal(m, goal);
  HistoryPresentation hp = history_presentation(m, a, options);
  Automaton sols = solution_automaton(hp, m, world, goal, options);
  PlanResult r;
  r.classes = hp.quotient.size();
  r.stats["solution_states"] = static_cast<double>(sols.state_count());
  auto witness = shortest_witness(sols, options.compile.limits);
  if (witness) {
    r.answer = Answer::Yes;
    const Word& h = (*witness)[0];
    for (std::size_t i = 1; i < h.size(); ++i) r.plan.push_back(hp.letters.name(h[i]));
    r.depth = r.plan.size();
  } else {
    r.answer = Answer::No;
  }
  r.stats["time_ms"] = ms_since(t0);
  return r;
}

namespace {

// Non-modal goals only depend on the interpretation of a history, so each
// interpretation needs to be expanded once: the first time it is met is
// along the length-lex least history reaching it.
PlanResult bfs_by_interpretation(const EpistemicModel& m, const std::string& world, const ActionModel& a,
                                 const Formula& goal, std::size_t max_depth, const PlanOptions& options) {
  Updater updater(m, a, options.compile);
  std::map<const Interpretation*, bool> verdict;
  auto holds = [&](const InterpretationPtr& ip) {
    auto [it, fresh] = verdict.try_emplace(ip.get(), false);
    if (fresh) {
      AutomaticPresentation p{m.signature, m.alphabet, m.domain, {ip->begin(), ip->end()}};
      it->second = check_sentence(p, goal, options.compile);
    }
    return it->second;
  };
  PlanResult r;
  std::vector<std::pair<std::vector<std::string>, InterpretationPtr>> level{{{}, updater.intern(m.interpretation(world))}};
  std::size_t histories = 0;
  for (std::size_t depth = 0;; ++depth) {
    r.depth = depth;
    for (auto& entry : level) {
      ++histories;
      if (holds(entry.second)) {
        r.answer = Answer::Yes;
        r.plan = entry.first;
        r.classes = verdict.size();
        r.stats["histories"] = static_cast<double>(histories);
        return r;
      }
    }
    if (depth == max_depth) break;
    std::vector<std::pair<std::vector<std::string>, InterpretationPtr>> next;
    std::set<const Interpretation*> queued;
    for (const auto& [plan, ip] : level) {
      for (const auto& e : a.events) {
        InterpretationPtr n = updater.apply(ip, e);
        if (!n || verdict.count(n.get()) || !queued.insert(n.get()).second) continue;
        auto p = plan;
        p.push_back(e);
        next.emplace_back(std::move(p), n);
      }
    }
    if (next.empty()) break;
    level = std::move(next);
  }
  r.classes = verdict.size();
  r.stats["histories"] = static_cast<double>(histories);
  return r;
}

// Modal goals: histories of length <= depth as a deterministic automaton
// whose states are (interpretation, length), evaluated on its history
// structure. K only relates histories of equal length, so the truncation
// does not change the truth of the goal at any history it contains.
PlanResult bfs_by_structure(const EpistemicModel& m, const std::string& world, const ActionModel& a,
                            const Formula& goal, std::size_t max_depth, const PlanOptions& options) {
  Updater updater(m, a, options.compile);
  const Alphabet letters = history_letters(m, a);
  const std::string y = fresh_variable(goal, "y");
  const Formula query =
      Formula::conjunction(standard_translation(goal, y), Formula::atom(history_names::from(world), {y}));
  PlanResult r;
  Automaton hist(letters, 1);
  std::vector<InterpretationPtr> interp{nullptr};
  std::map<std::pair<const Interpretation*, std::size_t>, State> index;
  std::vector<std::pair<InterpretationPtr, State>> frontier;
  hist.add_initial(hist.add_state(false));
  auto state_of = [&](const InterpretationPtr& ip, std::size_t depth) {
    auto [it, fresh] = index.try_emplace({ip.get(), depth}, 0);
    if (fresh) {
      it->second = hist.add_state(true);
      interp.push_back(ip);
      frontier.emplace_back(ip, it->second);
    }
    return it->second;
  };
  std::vector<std::tuple<State, Label, State>> edges;
  for (const auto& w : m.worlds) {
    edges.emplace_back(0, Label{*letters.find(w)}, state_of(updater.intern(m.interpretation(w)), 0));
  }
  for (std::size_t depth = 0;; ++depth) {
    r.depth = depth;
    Automaton h = hist;
    for (auto [src, label, dst] : edges) h.add_transition(src, label, dst);
    h.finish();
    AutomaticPresentation p = history_structure(m, make_skeleton(m, a, h, interp), options.compile.limits);
    Automaton sols = compile(p, query, {y}, options.compile);
    sols = restrict_alphabet(intersect(sols, with_alphabet(h, p.alphabet), options.compile.limits), letters);
    if (auto witness = shortest_witness(sols, options.compile.limits)) {
      r.answer = Answer::Yes;
      const Word& word = (*witness)[0];
      for (std::size_t i = 1; i < word.size(); ++i) r.plan.push_back(letters.name(word[i]));
      break;
    }
    if (depth == max_depth) break;
    auto current = std::move(frontier);
    frontier.clear();
    for (const auto& [ip, src] : current) {
      for (const auto& e : a.events) {
        InterpretationPtr next = updater.apply(ip, e);
        if (next) edges.emplace_back(src, Label{*letters.find(e)}, state_of(next, depth + 1));
      }
    }
    if (frontier.empty()) break;
  }
  r.classes = updater.interned_count();
  r.stats["states"] = static_cast<double>(hist.state_count());
  return r;
}

}  // namespace

PlanResult bfs_plan(const EpistemicModel& m, const std::string& world, const ActionModel& a, const Formula& goal,
                    std::size_t max_depth, const PlanOptions& options) {
  const auto t0 = Clock::now();
  check_goal(m, goal);
  if (std::find(m.worlds.begin(), m.worlds.end(), world) == m.worlds.end()) throw InputError("unknown world " + world);
  PlanResult r = classify(goal).modal ? bfs_by_structure(m, world, a, goal, max_depth, options)
                                      : bfs_by_interpretation(m, world, a, goal, max_depth, options);
  r.stats["time_ms"] = ms_since(t0);
  return r;
}

}  // namespace epp
