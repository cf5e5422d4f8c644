#pragma once

// The formal-language builder and the Turing-machine configuration graph.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "epp/epistemic.hpp"

namespace epp {

struct PlanningInstance {
  EpistemicModel model;
  ActionModel action;
  Formula goal;
  std::string world;
};

/// One world s over `alphabet`: generators L0..Lm-1, target L, C = ∅.
/// Events Ui (C := C ∨ Li), CP (C := ¬C) and, with concat, concat<i>
/// appending Li to C natively. Goal: forall x. (C(x) <-> L(x)).
PlanningInstance build_language_demo(const std::vector<std::string>& generators, const std::string& target,
                                     bool concat, const std::vector<std::string>& alphabet = {"a", "b"});

struct TmDescription {
  enum class Move { L, R };
  struct Action {
    std::string state;
    std::string write;
    Move move = Move::R;
  };
  std::vector<std::string> states;
  std::vector<std::string> input;
  std::vector<std::string> tape;  // includes input and blank
  std::string blank = "⊔";
  std::map<std::pair<std::string, std::string>, Action> delta;
  std::string initial;
  std::vector<std::string> accepting;
};

/// Throws InputError on inconsistent descriptions.
void check_tm(const TmDescription& tm);

/// Configurations u·q·v with trailing blanks of v trimmed, over the
/// alphabet tape ∪ states.
Automaton tm_configurations(const TmDescription& tm);
/// One-step relation; a move left at the left end keeps the head in place.
Automaton tm_step_relation(const TmDescription& tm);

/// Single world with predicates p (one step), i (initial configurations), f
/// (accepting configurations); one event closing p under composition;
/// goal exists x. exists y. (i(x) & p(x,y) & f(y)).
PlanningInstance build_tm_config_graph(const TmDescription& tm);

}  // namespace epp
