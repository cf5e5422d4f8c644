#pragma once

// Boolean and relational algebra on synchronous automata.
//
// Every automaton handled here accepts only valid convolutions: on each
// track, once the pad symbol is read it is read until the end. All
// operations preserve that invariant. Track indices are 0-based.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "epp/automaton.hpp"

namespace epp {

enum class Connective { And, Or, Minus };

/// Compiles a regular expression over the letters of `alphabet` into a
/// minimal 1-track DFA. Syntax: letters (longest match), juxtaposition or
/// '·' for concatenation, '|', postfix '*', '+', '?', parentheses, 'ε' for
/// the empty word and '∅' for the empty language.
Automaton regex_to_automaton(std::string_view pattern, const Alphabet& alphabet);

/// Automaton accepting exactly the given tuples.
Automaton from_tuples(const Alphabet& alphabet, std::size_t tracks, std::span<const Tuple> tuples);
/// 0-track automaton accepting the empty tuple (truth) or nothing.
Automaton constant_automaton(const Alphabet& alphabet, bool value);
/// All words over the alphabet, as a 1-track automaton.
Automaton all_words(const Alphabet& alphabet);
/// The language of valid k-track convolutions, i.e. (Σ*)^k.
Automaton valid_convolutions(const Alphabet& alphabet, std::size_t tracks);

Automaton determinize(const Automaton& a, const Limits& limits = {});
/// Removes states that are unreachable or cannot reach acceptance.
Automaton trim(const Automaton& a);
/// Minimal trim DFA with states numbered in breadth-first order (edges taken
/// in label order). Two automata accept the same language iff their
/// minimized forms are identical. The empty language yields one rejecting
/// state without edges.
Automaton minimize(const Automaton& a, const Limits& limits = {});
/// Minimal complete DFA (minimize() plus an explicit sink over the whole
/// label space), states numbered breadth-first.
Automaton canonicalize(const Automaton& a, const Limits& limits = {});

Automaton intersect(const Automaton& a, const Automaton& b, const Limits& limits = {});
Automaton unite(const Automaton& a, const Automaton& b);
Automaton difference(const Automaton& a, const Automaton& b, const Limits& limits = {});
Automaton boolean_combine(const Automaton& a, const Automaton& b, Connective conn,
                          const Limits& limits = {});

/// Tuples of `universe` words of length `tracks`.
Automaton universe_power(const Automaton& universe, std::size_t tracks, const Limits& limits = {});
/// Valid convolutions not accepted by `a`, as a minimal DFA.
Automaton complement(const Automaton& a, const Limits& limits = {});
/// universe^k minus a, where k = a.tracks().
Automaton complement_within(const Automaton& a, const Automaton& universe,
                            const Limits& limits = {});

/// {(e_0..e_{k-1}) | (e_{map[0]}, .., e_{map[k'-1]}) in L(a)}, with tracks
/// outside the image of `map` ranging over L(universe).
Automaton substitute_tracks(const Automaton& a, std::span<const std::size_t> map,
                            std::size_t tracks, const Automaton& universe,
                            const Limits& limits = {});
/// Inserts a free track at `position` (0 <= position <= k) ranging over
/// L(universe).
Automaton cylindrify(const Automaton& a, std::size_t position, const Automaton& universe,
                     const Limits& limits = {});
/// Existential projection of track `position`, followed by pad-closure so
/// the result only needs valid convolutions of the remaining tracks.
Automaton project(const Automaton& a, std::size_t position);

bool is_empty(const Automaton& a);
bool equivalent(const Automaton& a, const Automaton& b, const Limits& limits = {});
bool accepts(const Automaton& a, const Tuple& words);
/// Length-lexicographically least accepted tuple (convolution length first,
/// then label order), or nullopt for the empty language.
std::optional<Tuple> shortest_witness(const Automaton& a, const Limits& limits = {});
/// All accepted tuples with convolution length <= max_len, length-lex order.
std::vector<Tuple> enumerate_upto(const Automaton& a, std::size_t max_len,
                                  const Limits& limits = {});
/// True iff the automaton accepts only valid convolutions.
bool accepts_only_valid_convolutions(const Automaton& a, const Limits& limits = {});
/// True iff the language is finite.
bool is_finite(const Automaton& a);

/// Concatenation of two 1-track languages.
Automaton concatenate(const Automaton& a, const Automaton& b);
/// Re-expresses `a` over a superset alphabet (letters matched by name).
Automaton with_alphabet(const Automaton& a, const Alphabet& target);
/// Keeps only edges whose letters all exist in `target`.
Automaton restrict_alphabet(const Automaton& a, const Alphabet& target);

/// Convolution of a tuple as a label sequence.
std::vector<Label> convolve(const LabelCodec& codec, Symbol pad, const Tuple& words);

}  // namespace epp
