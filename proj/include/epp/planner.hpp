#pragma once

// Epistemic planning: the interpretation-class quotient, the class
// automaton, the automatic structure of histories, the decision procedure
// for quantifier-free post-conditions and a bounded breadth-first search.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epp/epistemic.hpp"

namespace epp {

struct PlanOptions {
  CompileOptions compile;
  std::size_t class_cap = 10'000;
};

/// Interpretation classes reachable from the worlds, with the transition
/// function on events. Class ids follow discovery order (worlds, then
/// events in declared order, breadth first).
struct ClassQuotient {
  std::vector<InterpretationPtr> classes;
  std::map<std::string, std::size_t> world_class;
  /// delta[c][i]: class after event i from class c, or none when the
  /// precondition fails.
  std::vector<std::vector<std::optional<std::size_t>>> delta;
  std::vector<std::string> events;
  /// False when the cap stopped the exploration; delta is then partial.
  bool complete = true;

  std::size_t size() const noexcept { return classes.size(); }
  /// Class of the history (world, events...), or none if it is not a history.
  std::optional<std::size_t> class_of(const std::vector<std::string>& history) const;
};

/// [h] ⊗ e, or nullptr when pre(e) fails at [h].
InterpretationPtr apply_event_to_class(Updater& updater, const InterpretationPtr& cls, const std::string& event);

/// Fixpoint closure of the world classes under all events, stopping at
/// `cap` classes (then complete == false).
ClassQuotient class_quotient(const EpistemicModel& m, Updater& updater, std::size_t cap = 10'000);
ClassQuotient class_quotient(const EpistemicModel& m, const ActionModel& a, std::size_t cap = 10'000);

/// Letters of histories: worlds then events, in declared order.
/// Throws InputError when a world and an event share a name.
Alphabet history_letters(const EpistemicModel& m, const ActionModel& a);

/// Deterministic automaton over history_letters: state 0 is the initial
/// state, state c+1 is class c. With `final` given only those classes
/// accept; otherwise every history is accepted.
Automaton class_automaton(const EpistemicModel& m, const ActionModel& a, const ClassQuotient& q,
                          const std::optional<std::vector<std::size_t>>& final = std::nullopt);

struct HistoryPresentation {
  AutomaticPresentation structure;
  Alphabet letters;
  Automaton histories;  // class automaton accepting every history
  ClassQuotient quotient;
};

/// Throws ResourceLimit when the quotient exceeds the cap.
HistoryPresentation history_presentation(const EpistemicModel& m, const ActionModel& a,
                                         const PlanOptions& options = {});

/// Histories from `world` (over history_letters) where the goal holds.
/// Throws FragmentError unless every post is quantifier-free, pre/post are
/// non-modal and no native transformer is used.
Automaton solution_automaton(const EpistemicModel& m, const std::string& world, const ActionModel& a,
                             const Formula& goal, const PlanOptions& options = {});
Automaton solution_automaton(const HistoryPresentation& hp, const EpistemicModel& m, const std::string& world,
                             const Formula& goal, const PlanOptions& options = {});

enum class Answer { Yes, No, Unknown };
std::string to_string(Answer a);

struct PlanResult {
  Answer answer = Answer::Unknown;
  std::vector<std::string> plan;  // events only
  std::size_t depth = 0;          // deepest level explored (bfs) or plan length
  std::size_t classes = 0;
  std::map<std::string, double> stats;
};

PlanResult decide_plan(const EpistemicModel& m, const std::string& world, const ActionModel& a,
                       const Formula& goal, const PlanOptions& options = {});

/// Sound search up to max_depth events; never answers No. Native
/// transformers and quantified posts are allowed.
PlanResult bfs_plan(const EpistemicModel& m, const std::string& world, const ActionModel& a,
                    const Formula& goal, std::size_t max_depth, const PlanOptions& options = {});

/// Checks a closed goal against the model's signature and agents.
void check_goal(const EpistemicModel& m, const Formula& goal);

}  // namespace epp
