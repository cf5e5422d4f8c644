#pragma once

// Automatic presentations of relational structures and the first-order
// model checker over them.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epp/automata.hpp"
#include "epp/logic.hpp"

namespace epp {

struct AutomaticPresentation {
  Signature signature;
  Alphabet alphabet;
  Automaton domain;  // 1 track
  std::map<std::string, Automaton> relations;
};

struct Diagnostic {
  std::string subject;  // "domain" or a predicate name
  std::string message;
  std::optional<Tuple> witness;
};

/// Empty when the presentation is well formed.
std::vector<Diagnostic> validate(const AutomaticPresentation& p);
std::string format_diagnostic(const Alphabet& alphabet, const Diagnostic& d);

struct CompileOptions {
  Limits limits;
  /// Intermediate automata above this many states are minimized.
  std::size_t minimize_threshold = 5000;
};

/// Automaton over |vars| tracks accepting exactly the satisfying
/// assignments of a non-modal formula; track i carries vars[i].
/// Throws FragmentError on modal input, InputError if a free variable is
/// missing from vars, ResourceLimit on the state cap.
Automaton compile(const AutomaticPresentation& p, const Formula& f,
                  const std::vector<std::string>& vars, const CompileOptions& options = {});

inline Automaton defined_relation(const AutomaticPresentation& p, const Formula& f,
                                  const std::vector<std::string>& vars,
                                  const CompileOptions& options = {}) {
  return compile(p, f, vars, options);
}

/// Truth of a closed non-modal formula.
bool check_sentence(const AutomaticPresentation& p, const Formula& f,
                    const CompileOptions& options = {});

/// Truth of a non-modal formula under an assignment of domain words.
/// Throws InputError for unassigned free variables or non-domain words.
bool check_assignment(const AutomaticPresentation& p, const Formula& f,
                      const std::map<std::string, Word>& assignment,
                      const CompileOptions& options = {});

/// Naive evaluation by enumerating a finite domain. Throws InputError when
/// the domain language is infinite.
bool brute_force_check(const AutomaticPresentation& p, const Formula& f,
                       const std::map<std::string, Word>& assignment = {});

}  // namespace epp
