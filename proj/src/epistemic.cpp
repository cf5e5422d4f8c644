#include "epp/epistemic.hpp"

#include <algorithm>
#include <functional>

#include "epp/errors.hpp"

namespace epp {

namespace {

const Relation kNoPairs;

void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// A copy of `a` reached after one column of `sep` on every track.
Automaton prefixed(const Automaton& a, Symbol sep) {
  Automaton out(a.alphabet(), a.tracks());
  State start = out.add_state(false);
  out.add_initial(start);
  for (State s = 0; s < a.state_count(); ++s) out.add_state(a.is_accepting(s));
  std::vector<Symbol> column(a.tracks(), sep);
  for (State i : a.initial()) out.add_transition(start, column, i + 1);
  for (State s = 0; s < a.state_count(); ++s) {
    for (auto [label, dst] : a.edges(s)) out.add_transition(s + 1, label, dst + 1);
  }
  out.finish();
  return out;
}

std::vector<std::size_t> iota(std::size_t from, std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = from + i;
  return v;
}

}  // namespace

std::size_t automaton_hash(const Automaton& a) {
  std::size_t h = a.state_count();
  hash_combine(h, a.tracks());
  for (State s : a.initial()) hash_combine(h, s);
  for (State s = 0; s < a.state_count(); ++s) {
    hash_combine(h, a.is_accepting(s));
    for (auto [label, dst] : a.edges(s)) {
      hash_combine(h, static_cast<std::size_t>(label));
      hash_combine(h, dst);
    }
  }
  return h;
}

// ---- models -------------------------------------------------------------

const Relation& EpistemicModel::relation(const std::string& agent) const {
  auto it = access.find(agent);
  return it == access.end() ? kNoPairs : it->second;
}

const Interpretation& EpistemicModel::interpretation(const std::string& world) const {
  auto it = interpretations.find(world);
  if (it == interpretations.end() || !it->second) throw InputError("no interpretation for world " + world);
  return *it->second;
}

AutomaticPresentation EpistemicModel::presentation(const std::string& world) const {
  const Interpretation& interp = interpretation(world);
  return AutomaticPresentation{signature, alphabet, domain, {interp.begin(), interp.end()}};
}

std::vector<std::string> EpistemicModel::history(const std::string& world) const {
  auto it = histories.find(world);
  return it == histories.end() ? std::vector<std::string>{world} : it->second;
}

std::vector<std::string> validate_model(const EpistemicModel& m) {
  std::vector<std::string> out;
  if (m.worlds.empty()) out.push_back("model has no worlds");
  std::set<std::string> worlds(m.worlds.begin(), m.worlds.end());
  if (worlds.size() != m.worlds.size()) out.push_back("duplicate world names");
  std::set<std::string> agents(m.agents.begin(), m.agents.end());
  for (const auto& [agent, pairs] : m.access) {
    if (!agents.count(agent)) out.push_back("access for unknown agent " + agent);
    for (const auto& [u, v] : pairs) {
      if (!worlds.count(u) || !worlds.count(v)) out.push_back("access of " + agent + " names an unknown world");
    }
  }
  if (m.domain.tracks() != 1) out.push_back("domain automaton must have 1 track");
  std::set<const Interpretation*> seen;
  for (const auto& w : m.worlds) {
    auto it = m.interpretations.find(w);
    if (it == m.interpretations.end() || !it->second) {
      out.push_back("world " + w + " has no interpretation");
      continue;
    }
    if (!seen.insert(it->second.get()).second) continue;
    for (const auto& d : validate(m.presentation(w))) {
      out.push_back("world " + w + ": " + format_diagnostic(m.alphabet, d));
    }
  }
  return out;
}

// ---- action models ------------------------------------------------------

const Relation& ActionModel::relation(const std::string& agent) const {
  auto it = access.find(agent);
  return it == access.end() ? kNoPairs : it->second;
}

Formula ActionModel::precondition(const std::string& event) const {
  auto it = pre.find(event);
  return it == pre.end() ? Formula::truth() : it->second;
}

bool ActionModel::has_natives() const {
  for (const auto& [e, m] : native) {
    if (!m.empty()) return true;
  }
  return false;
}

bool ActionModel::quantifier_free_posts() const {
  for (const auto& [e, m] : post) {
    for (const auto& [p, f] : m) {
      if (!classify(f).quantifier_free) return false;
    }
  }
  return true;
}

bool ActionModel::modal_conditions() const {
  for (const auto& [e, f] : pre) {
    if (classify(f).modal) return true;
  }
  for (const auto& [e, m] : post) {
    for (const auto& [p, f] : m) {
      if (classify(f).modal) return true;
    }
  }
  return false;
}

std::vector<std::string> post_variables(std::size_t arity) {
  std::vector<std::string> vars;
  for (std::size_t i = 1; i <= arity; ++i) vars.push_back("x" + std::to_string(i));
  return vars;
}

void check_action(const ActionModel& a, const Signature& signature) {
  if (a.events.empty()) throw InputError("action model has no events");
  std::set<std::string> events(a.events.begin(), a.events.end());
  if (events.size() != a.events.size()) throw InputError("duplicate event names");
  auto known = [&](const std::string& e) {
    if (!events.count(e)) throw InputError("unknown event " + e);
  };
  for (const auto& [agent, pairs] : a.access) {
    for (const auto& [u, v] : pairs) {
      known(u);
      known(v);
    }
  }
  for (const auto& [e, f] : a.pre) {
    known(e);
    check_atoms(f, signature, "pre(" + e + ")");
    if (!classify(f).closed) throw InputError("pre(" + e + ") is not closed");
  }
  for (const auto& [e, m] : a.post) {
    known(e);
    for (const auto& [p, f] : m) {
      auto arity = signature.arity(p);
      if (!arity) throw InputError("post(" + e + ") for unknown predicate " + p);
      check_atoms(f, signature, "post(" + e + ")(" + p + ")");
      auto allowed = post_variables(*arity);
      for (const auto& v : classify(f).free_vars) {
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
          throw InputError("post(" + e + ")(" + p + ") has free variable " + v);
        }
      }
    }
  }
  for (const auto& [e, m] : a.native) {
    known(e);
    for (const auto& [p, t] : m) {
      if (signature.arity(p) != std::optional<std::size_t>(1)) {
        throw InputError("native transformer on non-unary predicate " + p);
      }
      if (t.language.tracks() != 1) throw InputError("native transformer language must have 1 track");
    }
  }
}

// ---- updates ------------------------------------------------------------

Updater::Updater(const EpistemicModel& m, const ActionModel& a, CompileOptions options)
    : signature_(m.signature), alphabet_(m.alphabet), domain_(m.domain), action_(a), options_(options) {
  check_action(a, signature_);
  if (a.modal_conditions()) throw FragmentError("modal pre- or post-condition in the action model");
}

InterpretationPtr Updater::intern(const Interpretation& interp) {
  Interpretation canon;
  std::size_t h = 0;
  for (const auto& [name, a] : interp) {
    Automaton c = minimize(with_alphabet(a, alphabet_), options_.limits);
    hash_combine(h, std::hash<std::string>{}(name));
    hash_combine(h, automaton_hash(c));
    canon.emplace(name, std::move(c));
  }
  auto& bucket = pool_[h];
  for (const auto& p : bucket) {
    if (*p == canon) return p;
  }
  bucket.push_back(std::make_shared<const Interpretation>(std::move(canon)));
  ++interned_;
  return bucket.back();
}

AutomaticPresentation Updater::presentation(const Interpretation& interp) const {
  return AutomaticPresentation{signature_, alphabet_, domain_, {interp.begin(), interp.end()}};
}

bool Updater::applicable(const InterpretationPtr& interp, const std::string& event) {
  return apply(interp, event) != nullptr;
}

InterpretationPtr Updater::apply(const InterpretationPtr& interp, const std::string& event) {
  auto key = std::make_pair(interp.get(), event);
  if (auto it = cache_.find(key); it != cache_.end()) {
    ++hits_;
    return it->second;
  }
  if (std::find(action_.events.begin(), action_.events.end(), event) == action_.events.end()) {
    throw InputError("unknown event " + event);
  }
  AutomaticPresentation pres = presentation(*interp);
  InterpretationPtr result;
  if (check_sentence(pres, action_.precondition(event), options_)) {
    Interpretation next;
    auto posts = action_.post.find(event);
    auto natives = action_.native.find(event);
    for (const auto& [name, arity] : signature_.entries()) {
      const Automaton& current = interp->at(name);
      if (natives != action_.native.end()) {
        if (auto t = natives->second.find(name); t != natives->second.end()) {
          const Automaton lang = with_alphabet(t->second.language, alphabet_);
          next.emplace(name, t->second.op == NativeTransformer::Op::ConcatRight ? concatenate(current, lang)
                                                                                : concatenate(lang, current));
          continue;
        }
      }
      if (posts != action_.post.end()) {
        if (auto f = posts->second.find(name); f != posts->second.end()) {
          next.emplace(name, defined_relation(pres, f->second, post_variables(arity), options_));
          continue;
        }
      }
      next.emplace(name, current);
    }
    result = intern(next);
  }
  cache_.emplace(key, result);
  return result;
}

EpistemicModel product_update(const EpistemicModel& m, const ActionModel& a, Updater* updater) {
  std::optional<Updater> local;
  if (!updater) updater = &local.emplace(m, a);
  EpistemicModel out;
  out.agents = m.agents;
  out.signature = m.signature;
  out.alphabet = m.alphabet;
  out.domain = m.domain;
  std::map<std::pair<std::string, std::string>, std::string> name_of;
  std::set<std::string> used;
  for (const auto& w : m.worlds) {
    InterpretationPtr ip = updater->intern(m.interpretation(w));
    const auto hist = m.history(w);
    for (const auto& e : a.events) {
      InterpretationPtr next = updater->apply(ip, e);
      if (!next) continue;
      auto h = hist;
      h.push_back(e);
      std::string name = join(h, ".");
      if (!used.insert(name).second) throw InputError("world name collision: " + name);
      name_of[{w, e}] = name;
      out.worlds.push_back(name);
      out.interpretations[name] = next;
      out.histories[name] = std::move(h);
    }
  }
  if (out.worlds.empty()) throw EmptyModelError("no world satisfies any event precondition");
  for (const auto& agent : m.agents) {
    Relation& r = out.access[agent];
    for (const auto& [u, v] : m.relation(agent)) {
      for (const auto& [e, f] : a.relation(agent)) {
        auto x = name_of.find({u, e});
        auto y = name_of.find({v, f});
        if (x != name_of.end() && y != name_of.end()) r.emplace(x->second, y->second);
      }
    }
  }
  return out;
}

EpistemicModel iterate_update(const EpistemicModel& m, const ActionModel& a, std::size_t n, Updater* updater) {
  std::optional<Updater> local;
  if (!updater && n > 0) updater = &local.emplace(m, a);
  EpistemicModel current = m;
  for (std::size_t i = 0; i < n; ++i) current = product_update(current, a, updater);
  return current;
}

// ---- history structures -------------------------------------------------

AutomaticPresentation history_structure(const EpistemicModel& m, const HistorySkeleton& sk, const Limits& limits) {
  const std::string sep = "#";
  if (m.alphabet.contains(sep)) throw InputError("model alphabet uses the reserved letter #");
  std::vector<std::string> extra;
  for (const auto& l : sk.letters.letters()) {
    if (m.alphabet.contains(l) || l == sep) throw InputError("letter '" + l + "' clashes with the model alphabet");
    extra.push_back(l);
  }
  extra.push_back(sep);
  const Alphabet full = m.alphabet.extended(extra);
  const Symbol sep_sym = *full.find(sep);

  const Automaton hist = with_alphabet(sk.hist, full);
  const Automaton elements = prefixed(with_alphabet(m.domain, full), sep_sym);
  const Automaton universe = minimize(unite(hist, elements), limits);

  // Histories grouped by interpretation.
  std::map<const Interpretation*, Automaton> by_class;
  for (State s = 0; s < hist.state_count(); ++s) {
    if (!sk.interp[s] || !hist.is_accepting(s)) continue;
    auto [it, fresh] = by_class.try_emplace(sk.interp[s].get(), hist);
    if (fresh) {
      for (State t = 0; t < hist.state_count(); ++t) it->second.set_accepting(t, false);
    }
    it->second.set_accepting(s, true);
  }
  std::map<const Interpretation*, InterpretationPtr> owner;
  for (State s = 0; s < hist.state_count(); ++s) {
    if (sk.interp[s]) owner[sk.interp[s].get()] = sk.interp[s];
  }

  auto on_tracks = [&](const Automaton& a, std::vector<std::size_t> tracks, std::size_t k) {
    return substitute_tracks(a, tracks, k, universe, limits);
  };

  std::vector<std::string> agents, worlds;
  for (const auto& [a, r] : sk.ep) agents.push_back(a);
  for (const auto& [w, r] : sk.from) worlds.push_back(w);

  AutomaticPresentation p{history_signature(m.signature, agents, worlds), full, universe, {}};
  for (const auto& [a, r] : sk.ep) p.relations.emplace(history_names::ep(a), minimize(with_alphabet(r, full), limits));
  for (const auto& [w, r] : sk.from) p.relations.emplace(history_names::from(w), minimize(with_alphabet(r, full), limits));
  p.relations.emplace(history_names::dom(),
                      minimize(intersect(on_tracks(hist, {0}, 2), on_tracks(elements, {1}, 2), limits), limits));

  for (const auto& [name, arity] : m.signature.entries()) {
    Automaton acc(full, arity + 1);
    acc.finish();
    for (const auto& [cls, members] : by_class) {
      const Automaton& rel = cls->at(name);
      if (arity == 0) {
        if (accepts(rel, {})) acc = unite(acc, members);
        continue;
      }
      if (is_empty(rel)) continue;
      Automaton part = intersect(on_tracks(members, {0}, arity + 1),
                                 on_tracks(prefixed(with_alphabet(rel, full), sep_sym), iota(1, arity), arity + 1),
                                 limits);
      acc = unite(acc, part);
    }
    p.relations.emplace(history_names::pred(name), minimize(acc, limits));
  }
  return p;
}

AutomaticPresentation model_presentation(const EpistemicModel& m,
                                         const std::map<std::string, std::string>& world_letters) {
  auto letter = [&](const std::string& w) {
    auto it = world_letters.find(w);
    return it == world_letters.end() ? w : it->second;
  };
  std::vector<std::string> letters;
  for (const auto& w : m.worlds) letters.push_back(letter(w));
  HistorySkeleton sk{Alphabet(letters), Automaton{}, {}, {}, {}};
  const Alphabet& al = sk.letters;
  sk.hist = Automaton(al, 1);
  State start = sk.hist.add_state(false);
  sk.hist.add_initial(start);
  sk.interp.push_back(nullptr);
  std::map<std::string, Symbol> sym;
  for (const auto& w : m.worlds) {
    sym[w] = *al.find(letter(w));
    State s = sk.hist.add_state(true);
    sk.hist.add_transition(start, Label{sym[w]}, s);
    auto it = m.interpretations.find(w);
    if (it == m.interpretations.end() || !it->second) throw InputError("no interpretation for world " + w);
    sk.interp.push_back(it->second);
    std::vector<Tuple> single{{Word{sym[w]}}};
    sk.from.emplace(w, from_tuples(al, 1, single));
  }
  sk.hist.finish();
  for (const auto& a : m.agents) {
    std::vector<Tuple> pairs;
    for (const auto& [u, v] : m.relation(a)) pairs.push_back({Word{sym.at(u)}, Word{sym.at(v)}});
    sk.ep.emplace(a, from_tuples(al, 2, pairs));
  }
  return history_structure(m, sk);
}

// ---- evaluation ---------------------------------------------------------

FoelEvaluator::FoelEvaluator(const EpistemicModel& m, CompileOptions options)
    : model_(m), options_(options), pres_(model_presentation(m)) {
  for (const auto& w : m.worlds) world_symbol_[w] = *pres_.alphabet.find(w);
  separator_ = *pres_.alphabet.find("#");
}

const Automaton& FoelEvaluator::compiled(const Formula& f, std::vector<std::string>& vars) {
  const std::string key = to_string(f);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    for (const auto& a : agents(f)) {
      if (std::find(model_.agents.begin(), model_.agents.end(), a) == model_.agents.end()) {
        throw InputError("unknown agent " + a);
      }
    }
    check_atoms(f, model_.signature, "formula");
    const std::string y = fresh_variable(f, "y");
    std::vector<std::string> v{y};
    for (const auto& x : classify(f).free_vars) v.push_back(x);
    Automaton a = compile(pres_, standard_translation(f, y), v, options_);
    it = cache_.emplace(key, std::make_pair(std::move(v), std::move(a))).first;
  }
  vars = it->second.first;
  return it->second.second;
}

bool FoelEvaluator::eval(const std::string& world, const Formula& f, const std::map<std::string, Word>& assignment) {
  auto ws = world_symbol_.find(world);
  if (ws == world_symbol_.end()) throw InputError("unknown world " + world);
  std::vector<std::string> vars;
  const Automaton& a = compiled(f, vars);
  Tuple t{Word{ws->second}};
  for (std::size_t i = 1; i < vars.size(); ++i) {
    auto it = assignment.find(vars[i]);
    if (it == assignment.end()) throw InputError("unassigned variable " + vars[i]);
    if (!accepts(model_.domain, {it->second})) {
      throw InputError("value of " + vars[i] + " is not a domain word: " + model_.alphabet.format_word(it->second));
    }
    // Letters of the model alphabet keep their indices in the extended one.
    Word w{separator_};
    w.insert(w.end(), it->second.begin(), it->second.end());
    t.push_back(std::move(w));
  }
  return accepts(a, t);
}

std::vector<std::string> FoelEvaluator::satisfying_worlds(const Formula& f) {
  std::vector<std::string> out;
  for (const auto& w : model_.worlds) {
    if (eval(w, f)) out.push_back(w);
  }
  return out;
}

bool eval_foel(const EpistemicModel& m, const std::string& world, const Formula& f,
               const std::map<std::string, Word>& assignment) {
  return FoelEvaluator(m).eval(world, f, assignment);
}

}  // namespace epp
