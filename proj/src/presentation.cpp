#include "epp/presentation.hpp"

#include <algorithm>
#include <functional>

#include "epp/errors.hpp"

namespace epp {

namespace {

// Not a parseable identifier, so never clashes with a formula variable.
const std::string kShadowed = "\x01shadowed";

class Compiler {
 public:
  Compiler(const AutomaticPresentation& p, const CompileOptions& options)
      : p_(p), options_(options), universe_(minimize(p.domain, options.limits)) {}

  Automaton run(const Formula& f, const std::vector<std::string>& vars) {
    return shrink(compile(f, vars), true);
  }

 private:
  const Automaton& power(std::size_t k) {
    auto it = powers_.find(k);
    if (it == powers_.end()) it = powers_.emplace(k, universe_power(universe_, k, options_.limits)).first;
    return it->second;
  }

  Automaton shrink(Automaton a, bool force = false) {
    if (force || a.state_count() > options_.minimize_threshold) return minimize(a, options_.limits);
    return a;
  }

  Automaton negate(const Automaton& a) {
    return shrink(difference(power(a.tracks()), a, options_.limits));
  }

  Automaton atom(const Formula& f, const std::vector<std::string>& vars) {
    auto it = p_.relations.find(f.symbol());
    if (it == p_.relations.end()) throw InputError("no relation for predicate " + f.symbol());
    const Automaton& rel = it->second;
    if (rel.tracks() != f.args().size()) {
      throw InputError("predicate " + f.symbol() + " used with arity " + std::to_string(f.args().size()) +
                       " but has " + std::to_string(rel.tracks()));
    }
    std::vector<std::size_t> map;
    for (const auto& arg : f.args()) {
      auto pos = std::find(vars.begin(), vars.end(), arg);
      if (pos == vars.end()) throw InputError("free variable " + arg + " not among the tracks");
      map.push_back(static_cast<std::size_t>(pos - vars.begin()));
    }
    return shrink(substitute_tracks(rel, map, vars.size(), universe_, options_.limits));
  }

  Automaton exists(const Formula& f, const std::vector<std::string>& vars) {
    std::vector<std::string> inner = vars;
    std::replace(inner.begin(), inner.end(), f.symbol(), kShadowed);
    inner.push_back(f.symbol());
    return shrink(project(compile(f.child(0), inner), vars.size()));
  }

  Automaton compile(const Formula& f, const std::vector<std::string>& vars) {
    const std::size_t k = vars.size();
    const Limits& lim = options_.limits;
    switch (f.kind()) {
      case FormulaKind::True:
        return power(k);
      case FormulaKind::False: {
        Automaton none(p_.alphabet, k);
        none.finish();
        return none;
      }
      case FormulaKind::Atom:
        return atom(f, vars);
      case FormulaKind::Not:
        return negate(compile(f.child(0), vars));
      case FormulaKind::And:
        return shrink(boolean_combine(compile(f.child(0), vars), compile(f.child(1), vars),
                                      Connective::And, lim));
      case FormulaKind::Or:
        return shrink(boolean_combine(compile(f.child(0), vars), compile(f.child(1), vars),
                                      Connective::Or, lim));
      case FormulaKind::Implies:
        return negate(boolean_combine(compile(f.child(0), vars), compile(f.child(1), vars),
                                      Connective::Minus, lim));
      case FormulaKind::Iff: {
        Automaton a = compile(f.child(0), vars);
        Automaton b = compile(f.child(1), vars);
        Automaton xor_ab = unite(difference(a, b, lim), difference(b, a, lim));
        return negate(shrink(xor_ab));
      }
      case FormulaKind::Exists:
        return exists(f, vars);
      case FormulaKind::Forall: {
        Formula inner = Formula::exists(f.symbol(), Formula::negation(f.child(0)));
        return negate(compile(inner, vars));
      }
      case FormulaKind::Know:
        throw FragmentError("knowledge modality in a first-order query");
    }
    throw Error("unhandled formula kind");
  }

  const AutomaticPresentation& p_;
  const CompileOptions& options_;
  Automaton universe_;
  std::map<std::size_t, Automaton> powers_;
};

void check_domain_words(const AutomaticPresentation& p, const std::map<std::string, Word>& assignment) {
  for (const auto& [var, word] : assignment) {
    if (!accepts(p.domain, {word})) {
      throw InputError("value of " + var + " is not a domain word: " + p.alphabet.format_word(word));
    }
  }
}

class BruteForce {
 public:
  explicit BruteForce(const AutomaticPresentation& p) : p_(p) {
    if (!is_finite(p.domain)) throw InputError("domain language is infinite");
    Automaton d = minimize(p.domain);
    for (auto& t : enumerate_upto(d, d.state_count())) elements_.push_back(std::move(t[0]));
  }

  bool eval(const Formula& f, std::map<std::string, Word>& v) {
    switch (f.kind()) {
      case FormulaKind::True:
        return true;
      case FormulaKind::False:
        return false;
      case FormulaKind::Atom: {
        auto it = p_.relations.find(f.symbol());
        if (it == p_.relations.end()) throw InputError("no relation for predicate " + f.symbol());
        Tuple t;
        for (const auto& arg : f.args()) {
          auto val = v.find(arg);
          if (val == v.end()) throw InputError("unassigned variable " + arg);
          t.push_back(val->second);
        }
        return accepts(it->second, t);
      }
      case FormulaKind::Not:
        return !eval(f.child(0), v);
      case FormulaKind::And:
        return eval(f.child(0), v) && eval(f.child(1), v);
      case FormulaKind::Or:
        return eval(f.child(0), v) || eval(f.child(1), v);
      case FormulaKind::Implies:
        return !eval(f.child(0), v) || eval(f.child(1), v);
      case FormulaKind::Iff:
        return eval(f.child(0), v) == eval(f.child(1), v);
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        const bool want = f.kind() == FormulaKind::Exists;
        auto saved = v.find(f.symbol());
        std::optional<Word> old;
        if (saved != v.end()) old = saved->second;
        bool result = !want;
        for (const auto& e : elements_) {
          v[f.symbol()] = e;
          if (eval(f.child(0), v) == want) {
            result = want;
            break;
          }
        }
        if (old) v[f.symbol()] = *old; else v.erase(f.symbol());
        return result;
      }
      case FormulaKind::Know:
        throw FragmentError("knowledge modality in a first-order query");
    }
    throw Error("unhandled formula kind");
  }

 private:
  const AutomaticPresentation& p_;
  std::vector<Word> elements_;
};

}  // namespace

std::vector<Diagnostic> validate(const AutomaticPresentation& p) {
  std::vector<Diagnostic> out;
  if (p.domain.tracks() != 1) {
    out.push_back({"domain", "domain automaton must have 1 track", std::nullopt});
    return out;
  }
  if (!(p.domain.alphabet() == p.alphabet)) out.push_back({"domain", "alphabet mismatch", std::nullopt});
  if (is_empty(p.domain)) out.push_back({"domain", "domain language is empty", std::nullopt});
  for (const auto& [name, arity] : p.signature.entries()) {
    if (!p.relations.count(name)) out.push_back({name, "predicate has no relation automaton", std::nullopt});
  }
  const Automaton universe = minimize(p.domain);
  for (const auto& [name, rel] : p.relations) {
    auto arity = p.signature.arity(name);
    if (!arity) {
      out.push_back({name, "relation not in the signature", std::nullopt});
      continue;
    }
    if (rel.tracks() != *arity) {
      out.push_back({name, "automaton has " + std::to_string(rel.tracks()) + " tracks, arity is " +
                               std::to_string(*arity), std::nullopt});
      continue;
    }
    if (!(rel.alphabet() == p.alphabet)) {
      out.push_back({name, "alphabet mismatch", std::nullopt});
      continue;
    }
    if (!accepts_only_valid_convolutions(rel)) {
      out.push_back({name, "accepts a word that is not a valid convolution", std::nullopt});
      continue;
    }
    auto outside = shortest_witness(difference(rel, universe_power(universe, *arity)));
    if (outside) out.push_back({name, "accepts a tuple outside the domain", outside});
  }
  return out;
}

std::string format_diagnostic(const Alphabet& alphabet, const Diagnostic& d) {
  std::string s = d.subject + ": " + d.message;
  if (d.witness) {
    s += " (";
    for (std::size_t i = 0; i < d.witness->size(); ++i) {
      if (i) s += ",";
      s += alphabet.format_word((*d.witness)[i]);
    }
    s += ")";
  }
  return s;
}

Automaton compile(const AutomaticPresentation& p, const Formula& f, const std::vector<std::string>& vars,
                  const CompileOptions& options) {
  for (const auto& v : classify(f).free_vars) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
      throw InputError("free variable " + v + " not among the tracks");
    }
  }
  return Compiler(p, options).run(f, vars);
}

bool check_sentence(const AutomaticPresentation& p, const Formula& f, const CompileOptions& options) {
  return accepts(compile(p, f, {}, options), {});
}

bool check_assignment(const AutomaticPresentation& p, const Formula& f,
                      const std::map<std::string, Word>& assignment, const CompileOptions& options) {
  check_domain_words(p, assignment);
  std::vector<std::string> vars;
  Tuple values;
  for (const auto& v : classify(f).free_vars) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw InputError("unassigned variable " + v);
    vars.push_back(v);
    values.push_back(it->second);
  }
  return accepts(compile(p, f, vars, options), values);
}

bool brute_force_check(const AutomaticPresentation& p, const Formula& f,
                       const std::map<std::string, Word>& assignment) {
  check_domain_words(p, assignment);
  BruteForce bf(p);
  auto v = assignment;
  return bf.eval(f, v);
}

}  // namespace epp
