// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails or exceeds its time budget.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "epp/errors.hpp"
#include "epp/io.hpp"
#include "fixtures.hpp"
#include "formula_gen.hpp"
#include "naive_foel.hpp"
#include "tm_oracle.hpp"

using namespace epp;
using namespace epp::test;

namespace {

const char* kMixed = "(a|b)*(ab|ba)(a|b)*";

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CliRun {
  int code = -1;
  Json out;
};

CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(EPP_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run " + cmd);
  std::string text;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) text.append(buf, n);
  int status = pclose(pipe);
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (!text.empty()) r.out = Json::parse(text, nullptr, false);
  return r;
}

std::vector<std::vector<std::string>> histories_upto(const std::string& world, const ActionModel& a, std::size_t n) {
  std::vector<std::vector<std::string>> out{{world}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() > n) continue;
    for (const auto& e : a.events) {
      auto h = out[i];
      h.push_back(e);
      out.push_back(std::move(h));
    }
  }
  return out;
}

Word history_word(const Alphabet& letters, const std::vector<std::string>& h) {
  Word w;
  for (const auto& x : h) w.push_back(*letters.find(x));
  return w;
}

// Finite stand-in for the language demo: C as the set of its words up to
// length 4, with the three updates acting directly on sets.
using WordSet = std::set<Word>;

struct SetDemo {
  std::vector<Word> universe = words_upto(ab(), 4);
  WordSet a_star, b_star;

  SetDemo() {
    for (const auto& w : universe) {
      if (std::all_of(w.begin(), w.end(), [](Symbol s) { return s == 0; })) a_star.insert(w);
      if (std::all_of(w.begin(), w.end(), [](Symbol s) { return s == 1; })) b_star.insert(w);
    }
  }

  std::vector<WordSet> successors(const WordSet& c) const {
    WordSet u0 = c, u1 = c, cp;
    u0.insert(a_star.begin(), a_star.end());
    u1.insert(b_star.begin(), b_star.end());
    for (const auto& w : universe) {
      if (!c.count(w)) cp.insert(w);
    }
    return {u0, u1, cp};
  }

  WordSet restrict(const Automaton& lang) const {
    WordSet out;
    for (const auto& w : universe) {
      if (member(lang, {w})) out.insert(w);
    }
    return out;
  }

  // Distinct reachable values of C and the least depth reaching `target`.
  std::pair<std::size_t, std::optional<std::size_t>> explore(const WordSet& target) const {
    std::map<WordSet, std::size_t> depth{{WordSet{}, 0}};
    std::vector<WordSet> queue{WordSet{}};
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::size_t d = depth[queue[i]];
      if (queue[i] == target && !hit) hit = d;
      for (auto& next : successors(queue[i])) {
        if (depth.emplace(next, d + 1).second) queue.push_back(next);
      }
    }
    return {depth.size(), hit};
  }
};

Outcome fo_checker() {
  std::mt19937 rng(501);
  Signature sig{{"P", 1}, {"Q", 2}, {"R", 3}, {"S", 0}};
  FormulaShape shape{{{"P", 1}, {"Q", 2}, {"R", 3}, {"S", 0}}, {"x", "y", "z"}, {}, 3, 0};
  FormulaGenerator gen(shape, 17);
  std::size_t agree = 0, trials = 0;
  for (int i = 0; i < 500; ++i, ++trials) {
    AutomaticPresentation p = random_presentation(rng, sig);
    Formula f = gen.generate(2 + i % 4);
    if (check_sentence(p, f) == brute_force_check(p, f)) ++agree;
  }
  return {agree == trials, std::to_string(agree) + "/" + std::to_string(trials) + " agree"};
}

Outcome running_example() {
  PlanningInstance in = build_language_demo({"a*", "b*", "ab"}, "∅", true);
  Updater up(in.model, in.action);
  InterpretationPtr cur = up.intern(in.model.interpretation(in.world));
  for (const char* e : {"U0", "U1", "CP", "concat2"}) {
    cur = apply_event_to_class(up, cur, e);
    if (!cur) return {false, std::string("event ") + e + " not applicable"};
  }
  Automaton expected = regex_to_automaton(std::string("(") + kMixed + ")ab", in.model.alphabet);
  bool eq = equivalent(cur->at("C"), expected);
  return {eq, eq ? "C equals the regex automaton" : "C differs"};
}

Outcome positive_instance() {
  CliRun cli = run_cli(std::string("demo lang --generators 'a*,b*' --target '") + kMixed + "' --decide");
  SetDemo oracle;
  auto [count, min_depth] = oracle.explore(oracle.restrict(regex_to_automaton(kMixed, ab())));
  if (cli.code != 0 || cli.out.is_discarded()) return {false, "exit " + std::to_string(cli.code)};
  std::size_t len = cli.out["plan"].size();
  bool ok = cli.out["answer"] == "yes" && min_depth && len == *min_depth && len == 3;
  std::ostringstream s;
  s << "decide plan length " << len << ", oracle depth " << (min_depth ? std::to_string(*min_depth) : "none");
  return {ok, s.str()};
}

Outcome negative_instance() {
  CliRun decide = run_cli("demo lang --generators 'a*,b*' --target 'a*b' --decide");
  CliRun bfs = run_cli("demo lang --generators 'a*,b*' --target 'a*b' --bfs --max-depth 10");
  PlanningInstance in = build_language_demo({"a*", "b*"}, "a*b", false);
  ClassQuotient q = class_quotient(in.model, in.action);
  SetDemo oracle;
  auto [count, hit] = oracle.explore(oracle.restrict(regex_to_automaton("a*b", ab())));
  bool ok = decide.code == 1 && decide.out["answer"] == "no" && bfs.code == 2 && bfs.out["answer"] == "unknown" &&
            q.complete && q.size() == count && !hit;
  std::ostringstream s;
  s << "decide exit " << decide.code << ", bfs exit " << bfs.code << ", quotient " << q.size() << " vs closure "
    << count;
  return {ok, s.str()};
}

Outcome class_coherence() {
  PlanningInstance in = build_language_demo({"a*", "b*"}, kMixed, false);
  const EpistemicModel& m = in.model;
  const ActionModel& a = in.action;
  ClassQuotient q = class_quotient(m, a);
  Alphabet letters = history_letters(m, a);
  std::vector<Automaton> per_class;
  for (std::size_t c = 0; c < q.size(); ++c) per_class.push_back(class_automaton(m, a, q, std::vector<std::size_t>{c}));
  std::map<std::vector<std::string>, InterpretationPtr> actual;
  EpistemicModel cur = m;
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const auto& w : cur.worlds) actual[cur.history(w)] = cur.interpretations.at(w);
    if (n < 4) cur = iterate_update(cur, a, 1);
  }
  std::size_t agree = 0, total = 0;
  for (const auto& h : histories_upto(in.world, a, 4)) {
    ++total;
    auto it = actual.find(h);
    if (it == actual.end()) continue;
    std::optional<std::size_t> predicted;
    for (std::size_t c = 0; c < q.size(); ++c) {
      if (accepts(per_class[c], {history_word(letters, h)})) predicted = c;
    }
    if (!predicted) continue;
    bool same = true;
    for (const auto& [name, lang] : *it->second) same = same && equivalent(lang, q.classes[*predicted]->at(name));
    if (same) ++agree;
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " histories"};
}

Outcome st_soundness() {
  std::mt19937 rng(601);
  Signature sig{{"P", 1}, {"Q", 2}, {"R", 0}};
  FormulaShape shape{{{"P", 1}, {"Q", 2}, {"R", 0}}, {"x", "z"}, {"a", "b"}, 2, 2};
  FormulaGenerator gen(shape, 29);
  std::size_t agree = 0, total = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<Word> dom;
    EpistemicModel m = random_model(rng, sig, {"a", "b"}, &dom);
    FoelEvaluator ev(m);
    NaiveFoel naive(m, dom);
    Formula f = gen.generate(2 + i % 3);
    for (const auto& w : m.worlds) {
      ++total;
      if (ev.eval(w, f) == naive.eval(w, f)) ++agree;
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " (model, world) pairs"};
}

Outcome solution_completeness() {
  PlanningInstance in = build_language_demo({"a*", "b*"}, kMixed, false);
  Automaton sols = solution_automaton(in.model, in.world, in.action, in.goal);
  Alphabet letters = history_letters(in.model, in.action);
  std::set<Word> expected;
  EpistemicModel cur = in.model;
  for (std::size_t n = 0; n <= 4; ++n) {
    FoelEvaluator ev(cur);
    for (const auto& w : ev.satisfying_worlds(in.goal)) expected.insert(history_word(letters, cur.history(w)));
    if (n < 4) cur = product_update(cur, in.action);
  }
  std::set<Word> found;
  for (const auto& t : enumerate_upto(sols, 5)) found.insert(t[0]);
  return {found == expected && !found.empty(),
          std::to_string(found.size()) + " accepted vs " + std::to_string(expected.size()) + " enumerated"};
}

Outcome tm_demo() {
  auto dir = std::filesystem::temp_directory_path() / "epp_acceptance";
  std::filesystem::create_directories(dir);
  std::string yes_path = (dir / "one_step.json").string(), never_path = (dir / "runaway.json").string();
  write_json_file(yes_path, tm_to_json(one_step_tm()));
  write_json_file(never_path, tm_to_json(runaway_tm()));
  CliRun yes = run_cli("demo tm " + yes_path + " --bfs-depth 3");
  CliRun never = run_cli("demo tm " + never_path + " --bfs-depth 5");
  CliRun frag = run_cli("demo tm " + yes_path + " --decide");
  bool ok = yes.code == 0 && yes.out["answer"] == "yes" && yes.out["plan"].empty() && never.code == 2 &&
            never.out["answer"] == "unknown" && frag.code == 3;
  std::ostringstream s;
  s << "exits " << yes.code << "/" << never.code << "/" << frag.code;
  return {ok, s.str()};
}

Outcome quotient_termination() {
  std::mt19937 rng(901);
  Signature sig{{"P", 1}, {"Q", 2}};
  FormulaShape shape{{{"P", 1}, {"Q", 2}}, {"x", "z"}, {}, 0, 0};
  FormulaGenerator gen(shape, 31);
  std::size_t complete = 0, largest = 0;
  for (int trial = 0; trial < 50; ++trial) {
    EpistemicModel m = random_model(rng, sig, {"a"}, nullptr, 2);
    m.domain = all_words(m.alphabet);
    ActionModel a = random_qf_action(rng, gen, sig, {"a"}, 3);
    ClassQuotient q = class_quotient(m, a);
    if (q.complete) ++complete;
    largest = std::max(largest, q.size());
  }
  return {complete == 50, std::to_string(complete) + "/50 complete, largest " + std::to_string(largest)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"fo checker vs brute force", 60, fo_checker},
      {"running example C = (a*|b*)^c ab", 1, running_example},
      {"planner positive instance", 10, positive_instance},
      {"planner negative instance", 30, negative_instance},
      {"class automaton coherence", 30, class_coherence},
      {"standard translation soundness", 60, st_soundness},
      {"solution automaton completeness", 30, solution_completeness},
      {"turing machine demo", 10, tm_demo},
      {"quotient termination", 120, quotient_termination},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < c.budget_s;
    bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s %zu %s: %s; %.2fs (limit %.0fs)%s\n", pass ? "PASS" : "FAIL", i + 1, c.name, o.detail.c_str(),
                secs, c.budget_s, in_time ? "" : " over budget");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
