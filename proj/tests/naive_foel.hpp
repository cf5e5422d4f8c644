#pragma once

// Reference FOEL evaluator for models with a finite domain: enumerates
// worlds and domain words directly, with membership by edge simulation.

#include <map>
#include <string>

#include "epp/epistemic.hpp"
#include "support.hpp"

namespace epp::test {

class NaiveFoel {
 public:
  NaiveFoel(const EpistemicModel& m, std::vector<Word> elements) : m_(m), elements_(std::move(elements)) {}

  bool eval(const std::string& world, const Formula& f, std::map<std::string, Word> v = {}) {
    return go(world, f, v);
  }

 private:
  bool go(const std::string& w, const Formula& f, std::map<std::string, Word>& v) {
    switch (f.kind()) {
      case FormulaKind::True: return true;
      case FormulaKind::False: return false;
      case FormulaKind::Atom: {
        Tuple t;
        for (const auto& x : f.args()) t.push_back(v.at(x));
        return member(m_.interpretation(w).at(f.symbol()), t);
      }
      case FormulaKind::Not: return !go(w, f.child(0), v);
      case FormulaKind::And: return go(w, f.child(0), v) && go(w, f.child(1), v);
      case FormulaKind::Or: return go(w, f.child(0), v) || go(w, f.child(1), v);
      case FormulaKind::Implies: return !go(w, f.child(0), v) || go(w, f.child(1), v);
      case FormulaKind::Iff: return go(w, f.child(0), v) == go(w, f.child(1), v);
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        bool ex = f.kind() == FormulaKind::Exists;
        auto saved = v;
        bool result = !ex;
        for (const auto& e : elements_) {
          v[f.symbol()] = e;
          if (go(w, f.child(0), v) == ex) {
            result = ex;
            break;
          }
        }
        v = saved;
        return result;
      }
      case FormulaKind::Know:
        for (const auto& [u, u2] : m_.relation(f.symbol())) {
          if (u == w && !go(u2, f.child(0), v)) return false;
        }
        return true;
    }
    return false;
  }

  const EpistemicModel& m_;
  std::vector<Word> elements_;
};

}  // namespace epp::test
