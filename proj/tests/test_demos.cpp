#include "doctest.h"
#include "epp/errors.hpp"
#include "epp/io.hpp"
#include "fixtures.hpp"
#include "tm_oracle.hpp"

using namespace epp;
using namespace epp::test;

namespace {

const char* kMixed = "(a|b)*(ab|ba)(a|b)*";

Word config_word(const Alphabet& al, const Config& c) {
  Word w;
  for (const auto& x : c) w.push_back(*al.find(x));
  return w;
}

Config word_config(const Alphabet& al, const Word& w) {
  Config c;
  for (Symbol s : w) c.push_back(al.name(s));
  return c;
}

// Successors of c under a 2-track relation, up to length n.
std::set<Config> image(const Automaton& rel, const Alphabet& al, const Config& c, std::size_t n) {
  std::set<Config> out;
  std::vector<Tuple> first{{config_word(al, c)}};
  Automaton pinned = intersect(rel, substitute_tracks(from_tuples(al, 1, first), std::vector<std::size_t>{0}, 2,
                                                      all_words(al)));
  for (const auto& t : enumerate_upto(project(pinned, 0), n)) out.insert(word_config(al, t[0]));
  return out;
}

TmDescription random_tm(std::mt19937& rng) {
  TmDescription tm;
  tm.states = {"p", "q", "r"};
  tm.input = {"a", "b"};
  tm.tape = {"a", "b", "⊔"};
  tm.initial = "p";
  tm.accepting = {"r"};
  std::bernoulli_distribution coin(0.75);
  std::uniform_int_distribution<std::size_t> pick(0, 2);
  for (const auto& q : {"p", "q"}) {
    for (const auto& g : tm.tape) {
      if (coin(rng)) {
        tm.delta[{q, g}] = {tm.states[pick(rng)], tm.tape[pick(rng)],
                            pick(rng) == 0 ? TmDescription::Move::R : TmDescription::Move::L};
      }
    }
  }
  return tm;
}

}  // namespace

TEST_CASE("language demo") {
  PlanningInstance in = build_language_demo({"a*", "b*"}, kMixed, false);
  CHECK(validate_model(in.model).empty());
  PlanResult r = decide_plan(in.model, in.world, in.action, in.goal);
  CHECK(r.answer == Answer::Yes);
  CHECK(r.plan == std::vector<std::string>{"U0", "U1", "CP"});

  PlanningInstance star = build_language_demo({"a*", "b*"}, "a*", false);
  CHECK(decide_plan(star.model, star.world, star.action, star.goal).plan == std::vector<std::string>{"U0"});

  PlanningInstance empty = build_language_demo({"a*", "b*"}, "∅", false);
  PlanResult e = decide_plan(empty.model, empty.world, empty.action, empty.goal);
  CHECK(e.answer == Answer::Yes);
  CHECK(e.plan.empty());

  PlanningInstance cat = build_language_demo({"a*", "b*", "ab"}, std::string(kMixed) + "ab", true);
  PlanResult b = bfs_plan(cat.model, cat.world, cat.action, cat.goal, 4);
  CHECK(b.answer == Answer::Yes);
  CHECK(b.plan == std::vector<std::string>{"U0", "U1", "CP", "concat2"});
  CHECK_THROWS_AS(decide_plan(cat.model, cat.world, cat.action, cat.goal), FragmentError);
  CHECK_THROWS_AS(build_language_demo({"a*", "c"}, "a", false), InputError);
}

TEST_CASE("turing machine step relation") {
  TmDescription tm = one_step_tm();
  PlanningInstance in = build_tm_config_graph(tm);
  const Alphabet& al = in.model.alphabet;
  const Automaton& p = in.model.interpretation("G").at("p");
  CHECK(accepts(p, {al.parse_word("q0 a"), al.parse_word("a qacc")}));
  CHECK_FALSE(accepts(p, {al.parse_word("q0"), al.parse_word("a qacc")}));
  CHECK(validate_model(in.model).empty());

  std::mt19937 rng(3);
  std::vector<TmDescription> machines{tm, runaway_tm()};
  for (int i = 0; i < 25; ++i) machines.push_back(random_tm(rng));
  for (const auto& m : machines) {
    const Automaton step = tm_step_relation(m);
    const Alphabet& a = step.alphabet();
    CHECK(validate(AutomaticPresentation{Signature{{"p", 2}}, a, tm_configurations(m), {{"p", step}}}).empty());
    auto configs = tm_configs_upto(m, 4);
    for (const auto& c : configs) CHECK(accepts(tm_configurations(m), {config_word(a, c)}));
    for (const auto& c : configs) {
      std::set<Config> expected;
      if (auto next = tm_step(m, c)) expected.insert(*next);
      CHECK(image(step, a, c, 6) == expected);
    }
  }
}

TEST_CASE("closure triggers relate configurations up to 2^l steps apart") {
  std::mt19937 rng(19);
  std::vector<TmDescription> machines{runaway_tm()};
  for (int i = 0; i < 4; ++i) machines.push_back(random_tm(rng));
  for (const auto& m : machines) {
    PlanningInstance in = build_tm_config_graph(m);
    Updater up(in.model, in.action);
    InterpretationPtr cur = up.intern(in.model.interpretation("G"));
    for (std::size_t l = 0; l <= 3; ++l) {
      const Automaton& p = cur->at("p");
      const std::size_t reach = std::size_t{1} << l;
      for (const auto& c : tm_configs_upto(m, 3)) {
        std::set<Config> expected;
        Config x = c;
        for (std::size_t j = 1; j <= reach; ++j) {
          auto n = tm_step(m, x);
          if (!n) break;
          x = *n;
          expected.insert(x);
        }
        CHECK(image(p, in.model.alphabet, c, 3 + reach + 1) == expected);
      }
      cur = up.apply(cur, "close");
    }
  }
}

TEST_CASE("turing machine planning") {
  PlanningInstance yes = build_tm_config_graph(one_step_tm());
  PlanResult r = bfs_plan(yes.model, yes.world, yes.action, yes.goal, 3);
  CHECK(r.answer == Answer::Yes);
  CHECK(r.plan.empty());
  CHECK_THROWS_AS(decide_plan(yes.model, yes.world, yes.action, yes.goal), FragmentError);

  PlanningInstance never = build_tm_config_graph(runaway_tm());
  PlanResult u = bfs_plan(never.model, never.world, never.action, never.goal, 5);
  CHECK(u.answer == Answer::Unknown);
  ClassQuotient q = class_quotient(never.model, never.action, 4);
  CHECK_FALSE(q.complete);
}

TEST_CASE("json round trips") {
  PlanningInstance lang = build_language_demo({"a*", "b*", "ab"}, kMixed, true);
  PlanningInstance tm = build_tm_config_graph(one_step_tm());
  for (const auto* in : {&lang, &tm}) {
    Json m = model_to_json(in->model);
    EpistemicModel back = model_from_json(m);
    CHECK(model_to_json(back).dump() == m.dump());
    Json a = action_to_json(in->action);
    CHECK(action_to_json(action_from_json(a, back.signature, back.alphabet)).dump() == a.dump());
  }
  Json t = tm_to_json(one_step_tm());
  CHECK(tm_to_json(tm_from_json(t)).dump() == t.dump());

  EpistemicModel updated = iterate_update(lang.model, lang.action, 1);
  Json u = model_to_json(updated);
  EpistemicModel ub = model_from_json(u);
  CHECK(ub.history("s.CP") == std::vector<std::string>{"s", "CP"});
  CHECK(model_to_json(ub).dump() == u.dump());

  Json g = presentation_to_json(graph_presentation());
  CHECK(presentation_to_json(presentation_from_json(g)).dump() == g.dump());
}

TEST_CASE("json input") {
  Json j = Json::parse(R"J({
    "agents": ["a"], "worlds": ["s"], "access": {"a": [["s", "s"]]},
    "alphabet": ["a", "b"], "domain": "(a|b)*", "signature": {"P": 1},
    "interpretations": {"s": {"P": "a*b"}}})J");
  EpistemicModel m = model_from_json(j);
  CHECK(equivalent(m.interpretation("s").at("P"), regex_to_automaton("a*b", m.alphabet)));
  Json act = Json::parse(R"J({"events": ["e"], "pre": {"e": "exists x. P(x)"}, "post": {"e": {"P": "!P(x1)"}}})J");
  ActionModel a = action_from_json(act, m.signature, m.alphabet);
  CHECK(a.precondition("e") == parse_formula("exists x. P(x)"));

  Json bad_post = Json::parse(R"J({"events": ["e"], "post": {"e": {"P": "P(y)"}}})J");
  CHECK_THROWS_AS(action_from_json(bad_post, m.signature, m.alphabet), InputError);
  Json bad_pred = Json::parse(R"J({"events": ["e"], "post": {"e": {"P": "Q(x1)"}}})J");
  CHECK_THROWS_AS(action_from_json(bad_pred, m.signature, m.alphabet), InputError);
  j["interpretations"]["s"]["P"] = "a*c";
  CHECK_THROWS_AS(model_from_json(j), InputError);
  j.erase("interpretations");
  CHECK_THROWS_AS(model_from_json(j), InputError);
  Json aut = automaton_to_json(regex_to_automaton("ab*", m.alphabet));
  aut["transitions"][0][1] = {"z"};
  CHECK_THROWS_AS(automaton_from_json(aut), InputError);
}
