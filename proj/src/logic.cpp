#include "epp/logic.hpp"

#include <algorithm>
#include <cctype>

#include "epp/errors.hpp"

namespace epp {

void Signature::add(const std::string& name, std::size_t arity) {
  auto [it, fresh] = arities_.emplace(name, arity);
  if (!fresh && it->second != arity) {
    throw InputError("predicate '" + name + "' declared with arities " + std::to_string(it->second) +
                     " and " + std::to_string(arity));
  }
}

std::optional<std::size_t> Signature::arity(const std::string& name) const {
  auto it = arities_.find(name);
  if (it == arities_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::shared_ptr<const Formula::Node> make_node(FormulaKind kind, std::string symbol,
                                               std::vector<std::string> args,
                                               std::vector<Formula> children) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  n->symbol = std::move(symbol);
  n->args = std::move(args);
  n->children = std::move(children);
  return n;
}

const std::shared_ptr<const Formula::Node>& true_node() {
  static const auto node = make_node(FormulaKind::True, {}, {}, {});
  return node;
}

}  // namespace

Formula::Formula() : node_(true_node()) {}

Formula Formula::truth() { return Formula(); }
Formula Formula::falsity() { return Formula(make_node(FormulaKind::False, {}, {}, {})); }
Formula Formula::atom(std::string predicate, std::vector<std::string> args) {
  return Formula(make_node(FormulaKind::Atom, std::move(predicate), std::move(args), {}));
}
Formula Formula::negation(Formula f) {
  return Formula(make_node(FormulaKind::Not, {}, {}, {std::move(f)}));
}
Formula Formula::conjunction(Formula a, Formula b) {
  return Formula(make_node(FormulaKind::And, {}, {}, {std::move(a), std::move(b)}));
}
Formula Formula::disjunction(Formula a, Formula b) {
  return Formula(make_node(FormulaKind::Or, {}, {}, {std::move(a), std::move(b)}));
}
Formula Formula::implication(Formula a, Formula b) {
  return Formula(make_node(FormulaKind::Implies, {}, {}, {std::move(a), std::move(b)}));
}
Formula Formula::equivalence(Formula a, Formula b) {
  return Formula(make_node(FormulaKind::Iff, {}, {}, {std::move(a), std::move(b)}));
}
Formula Formula::forall(std::string var, Formula body) {
  return Formula(make_node(FormulaKind::Forall, std::move(var), {}, {std::move(body)}));
}
Formula Formula::exists(std::string var, Formula body) {
  return Formula(make_node(FormulaKind::Exists, std::move(var), {}, {std::move(body)}));
}
Formula Formula::know(std::string agent, Formula body) {
  return Formula(make_node(FormulaKind::Know, std::move(agent), {}, {std::move(body)}));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::symbol() const { return node_->symbol; }
const std::vector<std::string>& Formula::args() const { return node_->args; }
const Formula& Formula::child(std::size_t i) const { return node_->children.at(i); }
std::size_t Formula::child_count() const { return node_->children.size(); }

bool Formula::is_binary() const {
  switch (kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      return true;
    default:
      return false;
  }
}

bool Formula::is_quantifier() const {
  return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.symbol() == b.symbol() && a.args() == b.args() &&
         a.node_->children == b.node_->children;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const Signature* signature)
      : text_(text), signature_(signature) {}

  Formula parse() {
    Formula f = iff();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

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

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  std::optional<std::string> peek_ident() {
    skip_space();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) return std::nullopt;
    std::size_t end = pos_ + 1;
    while (end < text_.size() && ident_char(text_[end])) ++end;
    return std::string(text_.substr(pos_, end - pos_));
  }

  std::string ident(const char* what) {
    auto id = peek_ident();
    if (!id) fail(std::string("expected ") + what);
    pos_ += id->size();
    return *id;
  }

  Formula iff() {
    Formula f = implication();
    while (accept("<->")) f = Formula::equivalence(f, implication());
    return f;
  }

  Formula implication() {
    Formula f = disjunction();
    skip_space();
    // "->" but not the tail of "<->"
    if (accept("->")) return Formula::implication(f, implication());
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept("|")) f = Formula::disjunction(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = Formula::conjunction(f, unary());
    return f;
  }

  Formula unary() {
    skip_space();
    if (accept("!")) return Formula::negation(unary());
    auto id = peek_ident();
    if (id == "forall" || id == "exists") {
      pos_ += id->size();
      std::string var = ident("a variable");
      expect(".");
      Formula body = iff();
      return *id == "forall" ? Formula::forall(var, body) : Formula::exists(var, body);
    }
    if (id == "K") {
      std::size_t save = pos_;
      pos_ += 1;
      if (accept("[")) {
        std::string agent = ident("an agent name");
        expect("]");
        return Formula::know(agent, iff());
      }
      pos_ = save;
    }
    return primary();
  }

  Formula primary() {
    skip_space();
    if (accept("(")) {
      Formula f = iff();
      expect(")");
      return f;
    }
    std::size_t start = pos_;
    auto id = peek_ident();
    if (!id) fail("expected a formula");
    pos_ += id->size();
    if (*id == "true") return Formula::truth();
    if (*id == "false") return Formula::falsity();
    std::vector<std::string> args;
    if (accept("(")) {
      if (!accept(")")) {
        do {
          args.push_back(ident("a variable"));
        } while (accept(","));
        expect(")");
      }
    }
    if (signature_) {
      auto arity = signature_->arity(*id);
      if (!arity) {
        throw InputError("unknown predicate '" + *id + "' at position " + std::to_string(start));
      }
      if (*arity != args.size()) {
        throw InputError("predicate '" + *id + "' has arity " + std::to_string(*arity) + " but " +
                         std::to_string(args.size()) + " arguments at position " +
                         std::to_string(start));
      }
    }
    return Formula::atom(*id, std::move(args));
  }

  std::string_view text_;
  const Signature* signature_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature* signature) {
  return FormulaParser(text, signature).parse();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

const char* binary_symbol(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::And:
      return " & ";
    case FormulaKind::Or:
      return " | ";
    case FormulaKind::Implies:
      return " -> ";
    case FormulaKind::Iff:
      return " <-> ";
    default:
      return "";
  }
}

bool is_simple(const Formula& f) {
  return f.kind() == FormulaKind::True || f.kind() == FormulaKind::False ||
         f.kind() == FormulaKind::Atom;
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, std::string& out) {
  if (is_simple(f)) {
    print(f, out);
  } else {
    out += '(';
    print(f, out);
    out += ')';
  }
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::True:
      out += "true";
      return;
    case FormulaKind::False:
      out += "false";
      return;
    case FormulaKind::Atom:
      out += f.symbol();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ',';
          out += f.args()[i];
        }
        out += ')';
      }
      return;
    case FormulaKind::Not:
      out += '!';
      print_operand(f.child(0), out);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out += f.kind() == FormulaKind::Forall ? "forall " : "exists ";
      out += f.symbol();
      out += ". ";
      print(f.child(0), out);
      return;
    case FormulaKind::Know:
      out += "K[" + f.symbol() + "] ";
      print(f.child(0), out);
      return;
    default:
      print_operand(f.child(0), out);
      out += binary_symbol(f.kind());
      print_operand(f.child(1), out);
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Classification

namespace {

void collect(const Formula& f, std::vector<std::string>& bound, FormulaInfo& info) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      for (const auto& x : f.args()) {
        bool is_bound = std::find(bound.begin(), bound.end(), x) != bound.end();
        bool seen = std::find(info.free_vars.begin(), info.free_vars.end(), x) != info.free_vars.end();
        if (!is_bound && !seen) info.free_vars.push_back(x);
      }
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      info.quantifier_free = false;
      bound.push_back(f.symbol());
      collect(f.child(0), bound, info);
      bound.pop_back();
      return;
    case FormulaKind::Know:
      info.modal = true;
      collect(f.child(0), bound, info);
      return;
    default:
      for (std::size_t i = 0; i < f.child_count(); ++i) collect(f.child(i), bound, info);
  }
}

template <class Visit>
void walk(const Formula& f, Visit&& visit) {
  visit(f);
  for (std::size_t i = 0; i < f.child_count(); ++i) walk(f.child(i), visit);
}

}  // namespace

FormulaInfo classify(const Formula& f) {
  FormulaInfo info;
  std::vector<std::string> bound;
  collect(f, bound, info);
  info.closed = info.free_vars.empty();
  return info;
}

std::size_t modal_depth(const Formula& f) {
  std::size_t depth = 0;
  for (std::size_t i = 0; i < f.child_count(); ++i) depth = std::max(depth, modal_depth(f.child(i)));
  return f.kind() == FormulaKind::Know ? depth + 1 : depth;
}

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (g.kind() == FormulaKind::Atom) out.insert(g.args().begin(), g.args().end());
    if (g.is_quantifier()) out.insert(g.symbol());
  });
  return out;
}

std::set<std::string> predicates(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (g.kind() == FormulaKind::Atom) out.insert(g.symbol());
  });
  return out;
}

std::set<std::string> agents(const Formula& f) {
  std::set<std::string> out;
  walk(f, [&](const Formula& g) {
    if (g.kind() == FormulaKind::Know) out.insert(g.symbol());
  });
  return out;
}

// ---------------------------------------------------------------------------
// Standard translation

namespace history_names {
std::string ep(const std::string& agent) { return "^ep:" + agent; }
std::string pred(const std::string& predicate) { return "^P:" + predicate; }
std::string from(const std::string& world) { return "^from:" + world; }
std::string dom() { return "^dom"; }
}  // namespace history_names

Signature history_signature(const Signature& base, const std::vector<std::string>& agent_names,
                            const std::vector<std::string>& worlds) {
  Signature out;
  for (const auto& a : agent_names) out.add(history_names::ep(a), 2);
  for (const auto& [name, arity] : base.entries()) out.add(history_names::pred(name), arity + 1);
  for (const auto& w : worlds) out.add(history_names::from(w), 1);
  out.add(history_names::dom(), 2);
  return out;
}

std::string fresh_variable(const Formula& f, const std::string& base) {
  auto used = variables(f);
  std::string name = base;
  while (used.count(name)) name += '\'';
  return name;
}

namespace {

Formula dom_atom(const std::string& y, const std::string& x) {
  return Formula::atom(history_names::dom(), {y, x});
}

std::string next_history_var(const std::string& y, const std::set<std::string>& used) {
  std::string name = y + '\'';
  while (used.count(name)) name += '\'';
  return name;
}

Formula translate(const Formula& f, const std::string& y, std::set<std::string>& used) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    case FormulaKind::Atom: {
      std::vector<std::string> args{y};
      args.insert(args.end(), f.args().begin(), f.args().end());
      Formula out = Formula::atom(history_names::pred(f.symbol()), std::move(args));
      for (const auto& x : f.args()) out = Formula::conjunction(out, dom_atom(y, x));
      return out;
    }
    case FormulaKind::Not:
      return Formula::negation(translate(f.child(0), y, used));
    case FormulaKind::And:
      return Formula::conjunction(translate(f.child(0), y, used), translate(f.child(1), y, used));
    case FormulaKind::Or:
      return Formula::disjunction(translate(f.child(0), y, used), translate(f.child(1), y, used));
    case FormulaKind::Implies:
      return Formula::implication(translate(f.child(0), y, used), translate(f.child(1), y, used));
    case FormulaKind::Iff:
      return Formula::equivalence(translate(f.child(0), y, used), translate(f.child(1), y, used));
    case FormulaKind::Forall:
      return Formula::forall(f.symbol(), Formula::implication(dom_atom(y, f.symbol()),
                                                              translate(f.child(0), y, used)));
    case FormulaKind::Exists:
      return Formula::exists(f.symbol(), Formula::conjunction(dom_atom(y, f.symbol()),
                                                              translate(f.child(0), y, used)));
    case FormulaKind::Know: {
      std::string next = next_history_var(y, used);
      used.insert(next);
      Formula body = translate(f.child(0), next, used);
      used.erase(next);
      return Formula::forall(
          next, Formula::implication(Formula::atom(history_names::ep(f.symbol()), {y, next}), body));
    }
  }
  throw InputError("unknown formula kind");
}

}  // namespace

Formula standard_translation(const Formula& f, const std::string& y) {
  auto used = variables(f);
  if (used.count(y)) {
    throw InputError("standard translation: history variable '" + y + "' occurs in the formula");
  }
  used.insert(y);
  return translate(f, y, used);
}

void check_atoms(const Formula& f, const Signature& signature, const std::string& where) {
  if (f.kind() == FormulaKind::Atom) {
    auto arity = signature.arity(f.symbol());
    if (!arity) throw InputError(where + ": unknown predicate " + f.symbol());
    if (*arity != f.args().size()) throw InputError(where + ": arity mismatch for " + f.symbol());
  }
  for (std::size_t i = 0; i < f.child_count(); ++i) check_atoms(f.child(i), signature, where);
}

}  // namespace epp
