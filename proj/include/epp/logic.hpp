#pragma once

// First-order epistemic formulas.
//
// Text grammar: atoms `P(x,y)` (or a bare `P` for arity 0), `true`,
// `false`, connectives `!`, `&`, `|`, `->`, `<->` (binding in that order,
// `!` tightest), quantifiers `forall x.` / `exists x.`, the knowledge
// modality `K[agent]`, and parentheses. Quantifier and modality scopes
// extend as far right as possible. `->` associates to the right; `&`, `|`
// and `<->` to the left.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace epp {

class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<std::pair<const std::string, std::size_t>> entries)
      : arities_(entries) {}

  /// Throws InputError when the name exists with a different arity.
  void add(const std::string& name, std::size_t arity);
  bool contains(const std::string& name) const { return arities_.count(name) != 0; }
  std::optional<std::size_t> arity(const std::string& name) const;
  /// Predicates in name order.
  const std::map<std::string, std::size_t>& entries() const noexcept { return arities_; }
  std::size_t size() const noexcept { return arities_.size(); }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<std::string, std::size_t> arities_;
};

enum class FormulaKind { True, False, Atom, Not, And, Or, Implies, Iff, Forall, Exists, Know };

class Formula {
 public:
  Formula();  // true

  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string predicate, std::vector<std::string> args);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula equivalence(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula know(std::string agent, Formula body);

  FormulaKind kind() const;
  /// Predicate name (Atom), bound variable (Forall/Exists) or agent (Know).
  const std::string& symbol() const;
  /// Arguments of an atom.
  const std::vector<std::string>& args() const;
  /// Operand of Not/quantifiers/Know is child(0); binary connectives have two.
  const Formula& child(std::size_t i) const;
  std::size_t child_count() const;

  bool is_binary() const;
  bool is_quantifier() const;

  friend bool operator==(const Formula& a, const Formula& b);

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  FormulaKind kind = FormulaKind::True;
  std::string symbol;
  std::vector<std::string> args;
  std::vector<Formula> children;
};

/// Parses a formula. With a signature, atoms are checked against it
/// (unknown predicate, arity mismatch). Throws ParseError / InputError.
Formula parse_formula(std::string_view text, const Signature* signature = nullptr);
inline Formula parse_formula(std::string_view text, const Signature& signature) {
  return parse_formula(text, &signature);
}

/// Prints in the input grammar; parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);

struct FormulaInfo {
  std::vector<std::string> free_vars;  // first-occurrence order
  bool modal = false;
  bool quantifier_free = true;
  bool closed = true;
};

FormulaInfo classify(const Formula& f);
std::size_t modal_depth(const Formula& f);
/// Every variable name occurring in f, free or bound.
std::set<std::string> variables(const Formula& f);
/// Predicates occurring in atoms.
std::set<std::string> predicates(const Formula& f);
/// Agents occurring in K operators.
std::set<std::string> agents(const Formula& f);

/// Checks every atom against the signature (known predicate, arity).
/// Throws InputError mentioning `where`.
void check_atoms(const Formula& f, const Signature& signature, const std::string& where = "formula");

/// Names of the predicates of the history signature. The prefixes cannot
/// occur in parsed identifiers, so they never clash with base predicates.
namespace history_names {
std::string ep(const std::string& agent);
std::string pred(const std::string& predicate);
std::string from(const std::string& world);
std::string dom();
}  // namespace history_names

/// Per agent a binary ep, per P(k) a (k+1)-ary hat predicate, per world a
/// unary from, and the binary dom.
Signature history_signature(const Signature& base, const std::vector<std::string>& agents,
                            const std::vector<std::string>& worlds);

/// Standard translation into first-order logic over the history signature,
/// with `y` standing for the current history. Nested modalities use y', y'',
/// ... chosen fresh for f. Throws InputError if `y` occurs in f.
Formula standard_translation(const Formula& f, const std::string& y);

/// A variable name based on `base` that does not occur in f.
std::string fresh_variable(const Formula& f, const std::string& base);

}  // namespace epp
