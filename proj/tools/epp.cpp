// Command-line front end. Results are JSON on stdout, diagnostics on stderr.
// Exit codes: 0 yes, 1 no, 2 unknown, 3 fragment error, 4 resource limit,
// 5 input error.

#include <filesystem>
#include <iostream>
#include <new>

#include "CLI11.hpp"
#include "epp/errors.hpp"
#include "epp/io.hpp"

using namespace epp;

namespace {

enum Exit { kYes = 0, kNo = 1, kUnknown = 2, kFragment = 3, kResource = 4, kInput = 5 };

int answer_code(Answer a) {
  switch (a) {
    case Answer::Yes: return kYes;
    case Answer::No: return kNo;
    case Answer::Unknown: return kUnknown;
  }
  return kUnknown;
}

void emit(const Json& j) { std::cout << j.dump(2) << std::endl; }

struct Loaded {
  EpistemicModel model;
  ActionModel action;
};

Loaded load(const std::string& model_path, const std::string& action_path) {
  Loaded l{model_from_json(read_json_file(model_path)), {}};
  if (!action_path.empty()) l.action = action_from_json(read_json_file(action_path), l.model.signature, l.model.alphabet);
  return l;
}

std::map<std::string, Word> parse_assignment(const EpistemicModel& m, const std::vector<std::string>& items) {
  std::map<std::string, Word> out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("assignments are var=word");
    out[item.substr(0, eq)] = m.alphabet.parse_word(item.substr(eq + 1));
  }
  return out;
}

int run_plan(const PlanningInstance& in, bool decide, std::size_t depth, const PlanOptions& options) {
  PlanResult r = decide ? decide_plan(in.model, in.world, in.action, in.goal, options)
                        : bfs_plan(in.model, in.world, in.action, in.goal, depth, options);
  emit(plan_to_json(r));
  return answer_code(r.answer);
}

void dump_instance(const PlanningInstance& in, const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_json_file(dir + "/model.json", model_to_json(in.model));
  write_json_file(dir + "/action.json", action_to_json(in.action));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order epistemic planning over automatic structures"};
  app.require_subcommand(1);
  PlanOptions options;
  app.add_option("--state-cap", options.compile.limits.max_states, "Determinization state cap");

  std::string model_path, action_path, world, text, out;
  std::vector<std::string> assignment;
  std::size_t n = 1, cap = 10'000, depth = 10;
  bool decide = false, bfs = false;

  auto* check = app.add_subcommand("check", "Evaluate a formula at a world");
  check->add_option("model", model_path)->required();
  check->add_option("--world", world)->required();
  check->add_option("--formula", text)->required();
  check->add_option("--assign", assignment, "var=word");

  auto* update = app.add_subcommand("update", "Apply the action model n times");
  update->add_option("model", model_path)->required();
  update->add_option("action", action_path)->required();
  update->add_option("-n", n);
  update->add_option("--out", out, "Directory for model.json");

  auto* classes = app.add_subcommand("classes", "Interpretation-class quotient");
  classes->add_option("model", model_path)->required();
  classes->add_option("action", action_path)->required();
  classes->add_option("--cap", cap);

  auto add_plan_options = [&](CLI::App* cmd) {
    cmd->add_option("model", model_path)->required();
    cmd->add_option("action", action_path)->required();
    cmd->add_option("--world", world)->required();
    cmd->add_option("--goal", text)->required();
    cmd->add_option("--cap", options.class_cap);
  };
  auto* plan = app.add_subcommand("plan", "Search for a plan");
  add_plan_options(plan);
  auto* dflag = plan->add_flag("--decide", decide, "Decision procedure (quantifier-free posts)");
  plan->add_flag("--bfs", bfs, "Bounded breadth-first search")->excludes(dflag);
  plan->add_option("--max-depth", depth);

  auto* solutions = app.add_subcommand("solutions", "Automaton of all plans reaching the goal");
  add_plan_options(solutions);
  solutions->add_option("--out", out, "File for the automaton JSON");

  auto* demo = app.add_subcommand("demo", "Built-in demos");
  demo->require_subcommand(1);
  std::vector<std::string> generators, alphabet{"a", "b"};
  std::string target, tm_path, dump_dir;
  bool concat = false;
  auto* lang = demo->add_subcommand("lang", "Formal-language builder");
  lang->add_option("--generators", generators)->delimiter(',')->required();
  lang->add_option("--target", target)->required();
  lang->add_option("--alphabet", alphabet)->delimiter(',');
  lang->add_flag("--concat", concat, "Add native concatenation events");
  auto* ldec = lang->add_flag("--decide", decide);
  lang->add_flag("--bfs", bfs)->excludes(ldec);
  lang->add_option("--max-depth", depth);
  lang->add_option("--dump", dump_dir, "Write model.json and action.json here");
  std::size_t bfs_depth = 5;
  auto* tm = demo->add_subcommand("tm", "Turing-machine configuration graph");
  tm->add_option("tm", tm_path)->required();
  tm->add_option("--bfs-depth", bfs_depth);
  tm->add_flag("--decide", decide, "Run the decision procedure (rejected: quantified post)");
  tm->add_option("--dump", dump_dir, "Write model.json and action.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }

  try {
    if (check->parsed()) {
      Loaded l = load(model_path, "");
      Formula f = parse_formula(text, l.model.signature);
      bool holds = eval_foel(l.model, world, f, parse_assignment(l.model, assignment));
      emit({{"world", world}, {"formula", to_string(f)}, {"holds", holds}});
      return holds ? kYes : kNo;
    }
    if (update->parsed()) {
      Loaded l = load(model_path, action_path);
      EpistemicModel m = iterate_update(l.model, l.action, n);
      Json j = model_to_json(m);
      if (out.empty()) {
        emit(j);
      } else {
        std::filesystem::create_directories(out);
        write_json_file(out + "/model.json", j);
        emit({{"worlds", m.worlds.size()}, {"file", out + "/model.json"}});
      }
      return kYes;
    }
    if (classes->parsed()) {
      Loaded l = load(model_path, action_path);
      ClassQuotient q = class_quotient(l.model, l.action, cap);
      Json delta = Json::array();
      for (std::size_t c = 0; c < q.delta.size(); ++c) {
        Json row = Json::object();
        for (std::size_t i = 0; i < q.events.size(); ++i) {
          if (q.delta[c][i]) row[q.events[i]] = *q.delta[c][i];
        }
        delta.push_back(row);
      }
      emit({{"classes", q.size()}, {"complete", q.complete}, {"worlds", q.world_class}, {"delta", delta}});
      if (!q.complete) {
        std::cerr << "class cap of " << cap << " reached\n";
        return kResource;
      }
      return kYes;
    }
    if (plan->parsed() || solutions->parsed()) {
      Loaded l = load(model_path, action_path);
      PlanningInstance in{l.model, l.action, parse_formula(text, l.model.signature), world};
      if (plan->parsed()) {
        if (!decide && !bfs) throw InputError("choose --decide or --bfs");
        return run_plan(in, decide, depth, options);
      }
      Automaton sols = solution_automaton(in.model, world, in.action, in.goal, options);
      Json j = automaton_to_json(sols);
      if (out.empty()) {
        emit(j);
      } else {
        write_json_file(out, j);
        emit({{"states", sols.state_count()}, {"empty", is_empty(sols)}, {"file", out}});
      }
      return is_empty(sols) ? kNo : kYes;
    }
    if (lang->parsed()) {
      PlanningInstance in = build_language_demo(generators, target, concat, alphabet);
      if (!dump_dir.empty()) dump_instance(in, dump_dir);
      const bool use_decide = decide || (!bfs && !concat);
      return run_plan(in, use_decide, depth, options);
    }
    if (tm->parsed()) {
      PlanningInstance in = build_tm_config_graph(tm_from_json(read_json_file(tm_path)));
      if (!dump_dir.empty()) dump_instance(in, dump_dir);
      return run_plan(in, decide, bfs_depth, options);
    }
  } catch (const FragmentError& e) {
    std::cerr << "fragment error: " << e.what() << "\n";
    return kFragment;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
