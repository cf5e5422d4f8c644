#include "epp/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "epp/errors.hpp"

namespace epp {

namespace {

const std::string kPadName{Alphabet::kPad};

bool has_space(const std::string& s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

Alphabet::Alphabet() : impl_(std::make_shared<const Impl>()) {}

Alphabet::Alphabet(std::vector<std::string> letters) {
  auto impl = std::make_shared<Impl>();
  for (auto& letter : letters) {
    if (letter.empty() || letter == kPadName || has_space(letter)) {
      throw InputError("invalid alphabet letter '" + letter + "'");
    }
    auto [it, fresh] = impl->index.emplace(letter, static_cast<Symbol>(impl->letters.size()));
    if (!fresh) throw InputError("duplicate alphabet letter '" + letter + "'");
    impl->longest = std::max(impl->longest, letter.size());
    impl->letters.push_back(std::move(letter));
  }
  impl_ = std::move(impl);
}

const std::string& Alphabet::name(Symbol s) const {
  if (s == pad()) return kPadName;
  return impl_->letters.at(s);
}

std::optional<Symbol> Alphabet::find(std::string_view letter) const {
  auto it = impl_->index.find(std::string(letter));
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(std::string_view letter) const {
  if (auto s = find(letter)) return *s;
  throw InputError("letter '" + std::string(letter) + "' is not in the alphabet");
}

Word Alphabet::parse_word(std::string_view text) const {
  Word word;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    std::size_t len = std::min(impl_->longest, text.size() - pos);
    bool matched = false;
    for (; len > 0; --len) {
      if (auto s = find(text.substr(pos, len))) {
        word.push_back(*s);
        pos += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw InputError("word '" + std::string(text) + "' has a foreign letter at position " +
                       std::to_string(pos));
    }
  }
  return word;
}

std::string Alphabet::format_word(const Word& word) const {
  std::string out;
  for (Symbol s : word) out += name(s);
  return out;
}

Alphabet Alphabet::extended(std::span<const std::string> more) const {
  std::vector<std::string> all = letters();
  all.insert(all.end(), more.begin(), more.end());
  return Alphabet(std::move(all));
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  return a.impl_ == b.impl_ || a.impl_->letters == b.impl_->letters;
}

LabelCodec::LabelCodec(std::size_t base, std::size_t tracks) : base_(base), tracks_(tracks) {
  weight_.assign(tracks, 1);
  Label space = 1;
  constexpr Label kMax = Label{1} << 62;
  for (std::size_t i = tracks; i-- > 0;) {
    weight_[i] = space;
    if (space > kMax / base) {
      throw ResourceLimit("label space (" + std::to_string(base) + ")^" + std::to_string(tracks) +
                          " exceeds 63 bits");
    }
    space *= base;
  }
  space_ = space;
}

Label LabelCodec::encode(std::span<const Symbol> symbols) const {
  if (symbols.size() != tracks_) {
    throw InputError("label has " + std::to_string(symbols.size()) + " tracks, expected " +
                     std::to_string(tracks_));
  }
  Label code = 0;
  for (std::size_t i = 0; i < tracks_; ++i) {
    if (symbols[i] >= base_) throw InputError("symbol out of range in label");
    code += weight_[i] * symbols[i];
  }
  return code;
}

std::vector<Symbol> LabelCodec::decode(Label label) const {
  std::vector<Symbol> out(tracks_);
  for (std::size_t i = 0; i < tracks_; ++i) out[i] = at(label, i);
  return out;
}

Automaton::Automaton(Alphabet alphabet, std::size_t tracks)
    : alphabet_(std::move(alphabet)), codec_(alphabet_.size() + 1, tracks) {}

State Automaton::add_state(bool accepting) {
  if (accepting_.size() >= std::numeric_limits<State>::max()) {
    throw ResourceLimit("state index overflow");
  }
  accepting_.push_back(accepting ? 1 : 0);
  out_.emplace_back();
  return static_cast<State>(accepting_.size() - 1);
}

void Automaton::add_initial(State s) { initial_.push_back(s); }

void Automaton::set_accepting(State s, bool accepting) { accepting_.at(s) = accepting ? 1 : 0; }

void Automaton::add_transition(State src, Label label, State dst) {
  if (label >= codec_.all_pad()) {
    throw InputError("transition label is all-pad or out of range");
  }
  out_.at(src).emplace_back(label, dst);
}

void Automaton::add_transition(State src, std::span<const Symbol> tuple, State dst) {
  add_transition(src, codec_.encode(tuple), dst);
}

void Automaton::finish() {
  for (auto& edges : out_) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  std::sort(initial_.begin(), initial_.end());
  initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
}

std::size_t Automaton::transition_count() const noexcept {
  std::size_t n = 0;
  for (const auto& edges : out_) n += edges.size();
  return n;
}

bool Automaton::is_deterministic() const {
  if (initial_.size() != 1) return false;
  for (const auto& edges : out_) {
    for (std::size_t i = 1; i < edges.size(); ++i) {
      if (edges[i].first == edges[i - 1].first) return false;
    }
  }
  return true;
}

std::optional<State> Automaton::step(State s, Label label) const {
  const auto& edges = out_[s];
  auto it = std::lower_bound(edges.begin(), edges.end(), Edge{label, 0});
  if (it == edges.end() || it->first != label) return std::nullopt;
  return it->second;
}

bool operator==(const Automaton& a, const Automaton& b) {
  return a.alphabet_ == b.alphabet_ && a.tracks() == b.tracks() && a.initial_ == b.initial_ &&
         a.accepting_ == b.accepting_ && a.out_ == b.out_;
}

}  // namespace epp
