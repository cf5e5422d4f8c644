#include "epp/io.hpp"

#include <fstream>
#include <sstream>

#include "epp/errors.hpp"

namespace epp {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

template <class T>
T get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("malformed ") + what);
  }
}

std::vector<std::string> strings(const Json& j, const char* what) {
  return get<std::vector<std::string>>(j, what);
}

Json relation_to_json(const Relation& r) {
  Json out = Json::array();
  for (const auto& [u, v] : r) out.push_back({u, v});
  return out;
}

Relation relation_from_json(const Json& j) {
  Relation r;
  for (const auto& pr : j) {
    auto v = strings(pr, "pair");
    if (v.size() != 2) throw InputError("access pairs must have two entries");
    r.emplace(v[0], v[1]);
  }
  return r;
}

std::string move_name(TmDescription::Move m) { return m == TmDescription::Move::L ? "L" : "R"; }

}  // namespace

Json automaton_to_json(const Automaton& a) {
  Json j;
  j["tracks"] = a.tracks();
  j["alphabet"] = a.alphabet().letters();
  j["states"] = a.state_count();
  j["initial"] = a.initial();
  std::vector<State> acc;
  for (State s = 0; s < a.state_count(); ++s) {
    if (a.is_accepting(s)) acc.push_back(s);
  }
  j["accepting"] = acc;
  Json tr = Json::array();
  for (State s = 0; s < a.state_count(); ++s) {
    for (auto [label, dst] : a.edges(s)) {
      Json col = Json::array();
      for (Symbol x : a.codec().decode(label)) col.push_back(x == a.alphabet().pad() ? "_" : a.alphabet().name(x));
      tr.push_back({s, col, dst});
    }
  }
  j["transitions"] = tr;
  return j;
}

Automaton automaton_from_json(const Json& j, const Alphabet* alphabet) {
  if (j.is_string()) {
    if (!alphabet) throw InputError("a regex needs an alphabet");
    return regex_to_automaton(j.get<std::string>(), *alphabet);
  }
  const Alphabet own(strings(field(j, "alphabet"), "alphabet"));
  const auto tracks = get<std::size_t>(field(j, "tracks"), "tracks");
  const auto states = get<std::size_t>(field(j, "states"), "states");
  Automaton a(own, tracks);
  for (std::size_t s = 0; s < states; ++s) a.add_state(false);
  auto state = [&](const Json& v) {
    auto s = get<std::size_t>(v, "state");
    if (s >= states) throw InputError("state " + std::to_string(s) + " out of range");
    return static_cast<State>(s);
  };
  for (const auto& s : field(j, "initial")) a.add_initial(state(s));
  for (const auto& s : field(j, "accepting")) a.set_accepting(state(s), true);
  for (const auto& t : field(j, "transitions")) {
    if (!t.is_array() || t.size() != 3) throw InputError("transitions are [src,[symbols],dst]");
    auto col = strings(t[1], "transition label");
    if (col.size() != tracks) throw InputError("transition label has the wrong number of tracks");
    std::vector<Symbol> syms;
    for (const auto& c : col) {
      if (c == "_") {
        syms.push_back(own.pad());
      } else if (auto s = own.find(c)) {
        syms.push_back(*s);
      } else {
        throw InputError("unknown letter '" + c + "' in transition");
      }
    }
    a.add_transition(state(t[0]), syms, state(t[2]));
  }
  a.finish();
  return alphabet ? with_alphabet(a, *alphabet) : a;
}

Json signature_to_json(const Signature& s) {
  Json j = Json::object();
  for (const auto& [name, arity] : s.entries()) j[name] = arity;
  return j;
}

Signature signature_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("signature must be an object");
  Signature s;
  for (const auto& [name, arity] : j.items()) s.add(name, get<std::size_t>(arity, "arity"));
  return s;
}

Json presentation_to_json(const AutomaticPresentation& p) {
  Json j;
  j["signature"] = signature_to_json(p.signature);
  j["alphabet"] = p.alphabet.letters();
  j["domain"] = automaton_to_json(p.domain);
  Json rel = Json::object();
  for (const auto& [name, a] : p.relations) rel[name] = automaton_to_json(a);
  j["relations"] = rel;
  return j;
}

AutomaticPresentation presentation_from_json(const Json& j) {
  AutomaticPresentation p;
  p.signature = signature_from_json(field(j, "signature"));
  p.alphabet = Alphabet(strings(field(j, "alphabet"), "alphabet"));
  p.domain = automaton_from_json(field(j, "domain"), &p.alphabet);
  for (const auto& [name, a] : field(j, "relations").items()) p.relations.emplace(name, automaton_from_json(a, &p.alphabet));
  return p;
}

Json model_to_json(const EpistemicModel& m) {
  Json j;
  j["agents"] = m.agents;
  j["worlds"] = m.worlds;
  Json access = Json::object();
  for (const auto& a : m.agents) access[a] = relation_to_json(m.relation(a));
  j["access"] = access;
  j["alphabet"] = m.alphabet.letters();
  j["domain"] = automaton_to_json(m.domain);
  j["signature"] = signature_to_json(m.signature);
  Json interps = Json::object();
  for (const auto& w : m.worlds) {
    Json i = Json::object();
    for (const auto& [name, a] : m.interpretation(w)) i[name] = automaton_to_json(a);
    interps[w] = i;
  }
  j["interpretations"] = interps;
  if (!m.histories.empty()) {
    Json h = Json::object();
    for (const auto& w : m.worlds) h[w] = m.history(w);
    j["histories"] = h;
  }
  return j;
}

EpistemicModel model_from_json(const Json& j) {
  EpistemicModel m;
  m.agents = strings(field(j, "agents"), "agents");
  m.worlds = strings(field(j, "worlds"), "worlds");
  if (j.contains("access")) {
    for (const auto& [agent, pairs] : j.at("access").items()) m.access[agent] = relation_from_json(pairs);
  }
  m.alphabet = Alphabet(strings(field(j, "alphabet"), "alphabet"));
  m.domain = automaton_from_json(field(j, "domain"), &m.alphabet);
  m.signature = signature_from_json(field(j, "signature"));
  const Json& interps = field(j, "interpretations");
  for (const auto& w : m.worlds) {
    if (!interps.contains(w)) throw InputError("no interpretation for world " + w);
    Interpretation i;
    for (const auto& [name, a] : interps.at(w).items()) i.emplace(name, automaton_from_json(a, &m.alphabet));
    m.interpretations[w] = std::make_shared<const Interpretation>(std::move(i));
  }
  if (j.contains("histories")) {
    for (const auto& [w, h] : j.at("histories").items()) m.histories[w] = strings(h, "history");
  }
  auto problems = validate_model(m);
  if (!problems.empty()) throw InputError("invalid model: " + problems.front());
  return m;
}

Json action_to_json(const ActionModel& a) {
  Json j;
  j["events"] = a.events;
  Json access = Json::object();
  for (const auto& [agent, r] : a.access) access[agent] = relation_to_json(r);
  j["access"] = access;
  Json pre = Json::object();
  for (const auto& e : a.events) {
    if (a.pre.count(e)) pre[e] = to_string(a.pre.at(e));
  }
  j["pre"] = pre;
  Json post = Json::object();
  for (const auto& e : a.events) {
    if (!a.post.count(e)) continue;
    Json p = Json::object();
    for (const auto& [name, f] : a.post.at(e)) p[name] = to_string(f);
    post[e] = p;
  }
  j["post"] = post;
  if (a.has_natives()) {
    Json native = Json::object();
    for (const auto& e : a.events) {
      if (!a.native.count(e)) continue;
      Json n = Json::object();
      for (const auto& [name, t] : a.native.at(e)) {
        n[name] = {{"op", t.op == NativeTransformer::Op::ConcatRight ? "concat-right" : "concat-left"},
                   {"with", t.pattern}};
      }
      native[e] = n;
    }
    j["native"] = native;
  }
  return j;
}

ActionModel action_from_json(const Json& j, const Signature& signature, const Alphabet& alphabet) {
  ActionModel a;
  a.events = strings(field(j, "events"), "events");
  if (j.contains("access")) {
    for (const auto& [agent, pairs] : j.at("access").items()) a.access[agent] = relation_from_json(pairs);
  }
  if (j.contains("pre")) {
    for (const auto& [e, f] : j.at("pre").items()) a.pre[e] = parse_formula(get<std::string>(f, "formula"), signature);
  }
  if (j.contains("post")) {
    for (const auto& [e, posts] : j.at("post").items()) {
      for (const auto& [p, f] : posts.items()) {
        a.post[e][p] = parse_formula(get<std::string>(f, "formula"), signature);
      }
    }
  }
  if (j.contains("native")) {
    for (const auto& [e, ts] : j.at("native").items()) {
      for (const auto& [p, t] : ts.items()) {
        const std::string op = get<std::string>(field(t, "op"), "op");
        NativeTransformer n;
        if (op == "concat-right") {
          n.op = NativeTransformer::Op::ConcatRight;
        } else if (op == "concat-left") {
          n.op = NativeTransformer::Op::ConcatLeft;
        } else {
          throw InputError("unknown native op " + op);
        }
        n.pattern = get<std::string>(field(t, "with"), "with");
        n.language = regex_to_automaton(n.pattern, alphabet);
        a.native[e][p] = std::move(n);
      }
    }
  }
  check_action(a, signature);
  return a;
}

Json tm_to_json(const TmDescription& tm) {
  Json j;
  j["states"] = tm.states;
  j["input"] = tm.input;
  j["tape"] = tm.tape;
  j["blank"] = tm.blank;
  Json delta = Json::object();
  for (const auto& [key, act] : tm.delta) delta[key.first + "," + key.second] = {act.state, act.write, move_name(act.move)};
  j["delta"] = delta;
  j["initial"] = tm.initial;
  j["accepting"] = tm.accepting;
  return j;
}

TmDescription tm_from_json(const Json& j) {
  TmDescription tm;
  tm.states = strings(field(j, "states"), "states");
  tm.input = strings(field(j, "input"), "input");
  tm.tape = strings(field(j, "tape"), "tape");
  tm.blank = get<std::string>(field(j, "blank"), "blank");
  for (const auto& [key, v] : field(j, "delta").items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos) throw InputError("delta keys are \"state,symbol\"");
    auto act = strings(v, "delta entry");
    if (act.size() != 3 || (act[2] != "L" && act[2] != "R")) throw InputError("delta entries are [state, symbol, L|R]");
    tm.delta[{key.substr(0, comma), key.substr(comma + 1)}] =
        TmDescription::Action{act[0], act[1], act[2] == "L" ? TmDescription::Move::L : TmDescription::Move::R};
  }
  tm.initial = get<std::string>(field(j, "initial"), "initial");
  tm.accepting = strings(field(j, "accepting"), "accepting");
  check_tm(tm);
  return tm;
}

Json plan_to_json(const PlanResult& r) {
  Json j;
  j["answer"] = to_string(r.answer);
  j["plan"] = r.plan;
  j["depth"] = r.depth;
  j["classes"] = r.classes;
  Json stats = Json::object();
  for (const auto& [k, v] : r.stats) stats[k] = v;
  j["stats"] = stats;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace epp
