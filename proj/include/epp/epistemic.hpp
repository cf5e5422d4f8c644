#pragma once

// First-order epistemic models, action models, product update and FOEL
// evaluation on models with finitely many worlds.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "epp/presentation.hpp"

namespace epp {

/// Predicate name -> relation automaton over the model alphabet.
using Interpretation = std::map<std::string, Automaton>;
using InterpretationPtr = std::shared_ptr<const Interpretation>;
/// Pairs of world (or event) names.
using Relation = std::set<std::pair<std::string, std::string>>;

struct EpistemicModel {
  std::vector<std::string> agents;
  std::vector<std::string> worlds;
  std::map<std::string, Relation> access;  // per agent; missing means empty
  Signature signature;
  Alphabet alphabet;
  Automaton domain;
  std::map<std::string, InterpretationPtr> interpretations;
  /// For worlds produced by product update: the originating world followed
  /// by the events applied. Absent for input worlds.
  std::map<std::string, std::vector<std::string>> histories;

  const Relation& relation(const std::string& agent) const;
  const Interpretation& interpretation(const std::string& world) const;
  AutomaticPresentation presentation(const std::string& world) const;
  /// [world] for input worlds.
  std::vector<std::string> history(const std::string& world) const;
};

/// Problems with the model; empty when well formed.
std::vector<std::string> validate_model(const EpistemicModel& m);

struct NativeTransformer {
  enum class Op { ConcatRight, ConcatLeft };
  Op op = Op::ConcatRight;
  std::string pattern;  // regex text of the generator
  Automaton language;
};

struct ActionModel {
  std::vector<std::string> events;
  std::map<std::string, Relation> access;
  std::map<std::string, Formula> pre;  // missing means true
  /// Per event, per predicate P of arity k, a formula over x1..xk. A missing
  /// entry keeps P unchanged.
  std::map<std::string, std::map<std::string, Formula>> post;
  std::map<std::string, std::map<std::string, NativeTransformer>> native;

  const Relation& relation(const std::string& agent) const;
  Formula precondition(const std::string& event) const;
  bool has_natives() const;
  /// No post formula contains a quantifier.
  bool quantifier_free_posts() const;
  bool modal_conditions() const;
};

/// x1..xk.
std::vector<std::string> post_variables(std::size_t arity);

/// Checks names, arities, closedness of pre and variables of post against
/// the signature. Throws InputError.
void check_action(const ActionModel& a, const Signature& signature);

/// Applies events to interpretations, interning results so that equal
/// interpretations share one pointer, and caching per (interpretation,
/// event). Interned pointers compare equal iff all predicates are
/// language-equal.
class Updater {
 public:
  Updater(const EpistemicModel& m, const ActionModel& a, CompileOptions options = {});

  InterpretationPtr intern(const Interpretation& interp);
  /// Interned result, or nullptr when the precondition fails.
  InterpretationPtr apply(const InterpretationPtr& interp, const std::string& event);
  bool applicable(const InterpretationPtr& interp, const std::string& event);
  std::size_t interned_count() const noexcept { return interned_; }
  /// Number of apply() calls served by the cache.
  std::size_t cache_hits() const noexcept { return hits_; }
  const ActionModel& action() const noexcept { return action_; }

 private:
  AutomaticPresentation presentation(const Interpretation& interp) const;

  Signature signature_;
  Alphabet alphabet_;
  Automaton domain_;
  ActionModel action_;
  CompileOptions options_;
  std::unordered_map<std::size_t, std::vector<InterpretationPtr>> pool_;
  std::map<std::pair<const Interpretation*, std::string>, InterpretationPtr> cache_;
  std::size_t interned_ = 0;
  std::size_t hits_ = 0;
};

/// M ⊗ A. Throws FragmentError on modal pre/post, EmptyModelError when no
/// world survives.
EpistemicModel product_update(const EpistemicModel& m, const ActionModel& a, Updater* updater = nullptr);
EpistemicModel iterate_update(const EpistemicModel& m, const ActionModel& a, std::size_t n,
                              Updater* updater = nullptr);

/// The prefix part of a history structure: a deterministic automaton over
/// world and event letters whose accepting states are the histories, each
/// carrying its interpretation, plus the epistemic and starting-world
/// relations over those letters.
struct HistorySkeleton {
  Alphabet letters;
  Automaton hist;  // 1 track, deterministic
  std::vector<InterpretationPtr> interp;  // per state; null for non-histories
  std::map<std::string, Automaton> ep;    // per agent, 2 tracks
  std::map<std::string, Automaton> from;  // per world, 1 track
};

/// First-order structure over the history signature: universe = histories
/// ∪ #·domain, with the domain shared by all histories.
/// Throws InputError when a letter clashes with the model alphabet or "#".
AutomaticPresentation history_structure(const EpistemicModel& m, const HistorySkeleton& skeleton,
                                        const Limits& limits = {});

/// The history structure of the worlds of m (histories of length 0). World
/// letters default to the world names.
AutomaticPresentation model_presentation(const EpistemicModel& m,
                                         const std::map<std::string, std::string>& world_letters = {});

/// Evaluates FOEL formulas at worlds of one model via the standard
/// translation; compiled formulas are cached.
class FoelEvaluator {
 public:
  explicit FoelEvaluator(const EpistemicModel& m, CompileOptions options = {});

  bool eval(const std::string& world, const Formula& f,
            const std::map<std::string, Word>& assignment = {});
  /// Worlds where a sentence holds, in model order.
  std::vector<std::string> satisfying_worlds(const Formula& f);
  const AutomaticPresentation& presentation() const noexcept { return pres_; }

 private:
  const Automaton& compiled(const Formula& f, std::vector<std::string>& vars);

  const EpistemicModel& model_;
  CompileOptions options_;
  AutomaticPresentation pres_;
  std::map<std::string, Symbol> world_symbol_;
  Symbol separator_;
  std::map<std::string, std::pair<std::vector<std::string>, Automaton>> cache_;
};

bool eval_foel(const EpistemicModel& m, const std::string& world, const Formula& f,
               const std::map<std::string, Word>& assignment = {});

/// Structural hash of an automaton; equal for equal canonical forms.
std::size_t automaton_hash(const Automaton& a);

}  // namespace epp
