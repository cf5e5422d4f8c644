#include <cctype>
#include <string>
#include <string_view>

#include "epp/automata.hpp"
#include "epp/errors.hpp"

namespace epp {

namespace {

constexpr std::string_view kEpsilon = "ε";
constexpr std::string_view kEmptySet = "∅";
constexpr std::string_view kDot = "·";

// Epsilon-free NFA combinators over one track.

Automaton letter_nfa(const Alphabet& alphabet, Symbol s) {
  Automaton a(alphabet, 1);
  State p = a.add_state(false);
  State q = a.add_state(true);
  a.add_initial(p);
  a.add_transition(p, Label{s}, q);
  a.finish();
  return a;
}

Automaton epsilon_nfa(const Alphabet& alphabet, bool accepting) {
  Automaton a(alphabet, 1);
  a.add_initial(a.add_state(accepting));
  a.finish();
  return a;
}

Automaton star(const Automaton& a, bool allow_empty) {
  Automaton out(a.alphabet(), 1);
  for (State s = 0; s < a.state_count(); ++s) out.add_state(a.is_accepting(s));
  for (State s = 0; s < a.state_count(); ++s) {
    for (auto [label, dst] : a.edges(s)) out.add_transition(s, label, dst);
    if (!a.is_accepting(s)) continue;
    for (State i : a.initial()) {
      for (auto [label, dst] : a.edges(i)) out.add_transition(s, label, dst);
    }
  }
  for (State s : a.initial()) out.add_initial(s);
  if (allow_empty) out.add_initial(out.add_state(true));
  out.finish();
  return out;
}

class RegexParser {
 public:
  RegexParser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  Automaton parse() {
    Automaton result = alternation();
    skip_space();
    if (pos_ < text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return result;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  // Longest alphabet letter at the cursor, if any.
  std::optional<std::pair<Symbol, std::size_t>> letter_here() const {
    std::optional<std::pair<Symbol, std::size_t>> best;
    for (Symbol s = 0; s < alphabet_.size(); ++s) {
      const std::string& name = alphabet_.name(s);
      if (text_.substr(pos_, name.size()) == name && (!best || name.size() > best->second)) {
        best = std::make_pair(s, name.size());
      }
    }
    return best;
  }

  bool at_atom_start() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    if (letter_here()) return true;
    char c = text_[pos_];
    // Anything that is not a closing or postfix operator starts an atom;
    // atom() reports unknown letters.
    return c != ')' && c != '|' && c != '*' && c != '+' && c != '?';
  }

  Automaton alternation() {
    Automaton result = concatenation();
    while (accept("|")) result = unite(result, concatenation());
    return result;
  }

  Automaton concatenation() {
    Automaton result = epsilon_nfa(alphabet_, true);
    bool first = true;
    while (true) {
      bool explicit_dot = accept(kDot);
      if (!at_atom_start()) {
        if (explicit_dot) throw ParseError("expected an expression after '·'", pos_);
        break;
      }
      Automaton next = repetition();
      result = first ? std::move(next) : concatenate(result, next);
      first = false;
    }
    return result;
  }

  Automaton repetition() {
    Automaton result = atom();
    while (true) {
      if (accept("*")) {
        result = star(result, true);
      } else if (accept("+")) {
        result = star(result, false);
      } else if (accept("?")) {
        result = unite(result, epsilon_nfa(alphabet_, true));
      } else {
        return result;
      }
    }
  }

  Automaton atom() {
    skip_space();
    if (auto letter = letter_here()) {
      pos_ += letter->second;
      return letter_nfa(alphabet_, letter->first);
    }
    if (accept(kEpsilon)) return epsilon_nfa(alphabet_, true);
    if (accept(kEmptySet)) return epsilon_nfa(alphabet_, false);
    if (accept("(")) {
      std::size_t open = pos_ - 1;
      Automaton inner = alternation();
      if (!accept(")")) throw ParseError("unbalanced '(' opened at " + std::to_string(open), pos_);
      return inner;
    }
    if (pos_ >= text_.size()) throw ParseError("unexpected end of pattern", pos_);
    char c = text_[pos_];
    if (c == ')' || c == '|' || c == '*' || c == '+' || c == '?') {
      throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }
    throw InputError("unknown letter in pattern at position " + std::to_string(pos_));
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

Automaton regex_to_automaton(std::string_view pattern, const Alphabet& alphabet) {
  return minimize(RegexParser(pattern, alphabet).parse());
}

}  // namespace epp
