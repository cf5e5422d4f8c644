#pragma once

// Synchronous k-track automata over a padded alphabet.
//
// A k-tuple of words is read as its convolution: one letter per track per
// step, shorter tracks padded at the end with the reserved symbol "_". A
// transition label is a k-tuple over letters and pad, packed into a single
// integer (track 0 most significant, pad is the largest digit), so that the
// numeric order of labels is the lexicographic order of tuples under the
// alphabet order.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace epp {

using Symbol = std::uint32_t;
using State = std::uint32_t;
using Label = std::uint64_t;
using Word = std::vector<Symbol>;
using Tuple = std::vector<Word>;

class Alphabet {
 public:
  static constexpr std::string_view kPad = "_";

  Alphabet();
  /// Letters must be non-empty, distinct, free of whitespace and differ from
  /// the pad symbol. Throws InputError otherwise.
  explicit Alphabet(std::vector<std::string> letters);

  std::size_t size() const noexcept { return impl_->letters.size(); }
  Symbol pad() const noexcept { return static_cast<Symbol>(size()); }
  const std::vector<std::string>& letters() const noexcept { return impl_->letters; }
  /// Name of a letter, or "_" for the pad symbol.
  const std::string& name(Symbol s) const;
  std::optional<Symbol> find(std::string_view letter) const;
  /// Like find(), but throws InputError for a foreign letter.
  Symbol at(std::string_view letter) const;
  bool contains(std::string_view letter) const { return find(letter).has_value(); }

  /// Splits text into letters by greedy longest match; whitespace between
  /// letters is ignored. Throws InputError on a foreign letter.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& word) const;

  /// This alphabet followed by `more` (which must be fresh letters).
  Alphabet extended(std::span<const std::string> more) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  struct Impl {
    std::vector<std::string> letters;
    std::unordered_map<std::string, Symbol> index;
    std::size_t longest = 0;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Packs k-tuples over {0..base-1} into integers.
class LabelCodec {
 public:
  LabelCodec() = default;
  /// Throws ResourceLimit when base^tracks does not fit in 63 bits.
  LabelCodec(std::size_t base, std::size_t tracks);

  std::size_t base() const noexcept { return base_; }
  std::size_t tracks() const noexcept { return tracks_; }
  /// Number of distinct codes, base^tracks.
  Label space() const noexcept { return space_; }
  Label all_pad() const noexcept { return space_ - 1; }

  Label encode(std::span<const Symbol> symbols) const;
  Symbol at(Label label, std::size_t track) const {
    return static_cast<Symbol>((label / weight_[track]) % base_);
  }
  std::vector<Symbol> decode(Label label) const;
  Label weight(std::size_t track) const { return weight_[track]; }

 private:
  std::size_t base_ = 1;
  std::size_t tracks_ = 0;
  Label space_ = 1;
  std::vector<Label> weight_;
};

/// Caps for operations with exponential worst cases.
struct Limits {
  std::size_t max_states = 1'000'000;
  /// Upper bound on explicit transitions materialized by canonicalize().
  std::size_t max_transitions = 20'000'000;
};

class Automaton {
 public:
  using Edge = std::pair<Label, State>;

  Automaton() : Automaton(Alphabet{}, 1) {}
  Automaton(Alphabet alphabet, std::size_t tracks);

  std::size_t tracks() const noexcept { return codec_.tracks(); }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const LabelCodec& codec() const noexcept { return codec_; }

  State add_state(bool accepting = false);
  void add_initial(State s);
  void set_accepting(State s, bool accepting);
  /// Rejects the all-pad label and labels outside the code space.
  void add_transition(State src, Label label, State dst);
  void add_transition(State src, std::span<const Symbol> tuple, State dst);
  /// Sorts and deduplicates edges and initial states. Every construction
  /// ends with finish(); the algorithms rely on sorted edge lists.
  void finish();

  std::size_t state_count() const noexcept { return accepting_.size(); }
  std::size_t transition_count() const noexcept;
  const std::vector<State>& initial() const noexcept { return initial_; }
  bool is_accepting(State s) const { return accepting_[s] != 0; }
  std::span<const Edge> edges(State s) const { return out_[s]; }
  /// One initial state and at most one edge per (state, label).
  bool is_deterministic() const;
  /// Target of the unique edge with `label`; requires sorted edges.
  std::optional<State> step(State s, Label label) const;

  Label encode(std::span<const Symbol> tuple) const { return codec_.encode(tuple); }

  friend bool operator==(const Automaton& a, const Automaton& b);

 private:
  Alphabet alphabet_;
  LabelCodec codec_;
  std::vector<State> initial_;
  std::vector<char> accepting_;
  std::vector<std::vector<Edge>> out_;
};

}  // namespace epp
