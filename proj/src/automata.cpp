#include "epp/automata.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>

#include "epp/errors.hpp"

namespace epp {

namespace {

using Key = std::vector<std::uint32_t>;
constexpr std::uint32_t kDone = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kSink = std::numeric_limits<std::uint32_t>::max();

struct KeyHash {
  template <class T>
  std::size_t operator()(const std::vector<T>& key) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ key.size();
    for (auto v : key) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

void require_compatible(const Automaton& a, const Automaton& b, const char* op) {
  if (a.tracks() != b.tracks()) {
    throw InputError(std::string(op) + ": track mismatch (" + std::to_string(a.tracks()) +
                     " vs " + std::to_string(b.tracks()) + ")");
  }
  if (!(a.alphabet() == b.alphabet())) throw InputError(std::string(op) + ": alphabet mismatch");
}

// Builds an automaton by exploring product-like keys breadth-first.
// expand(key, emit) calls emit(label, next_key) for every edge.
template <class Expand, class Accept>
Automaton explore(const Alphabet& alphabet, std::size_t tracks, std::vector<Key> initial,
                  Expand&& expand, Accept&& accept, const Limits& limits, const char* what) {
  Automaton out(alphabet, tracks);
  std::unordered_map<Key, State, KeyHash> ids;
  std::vector<Key> keys;
  auto intern = [&](Key&& key) -> State {
    auto [it, fresh] = ids.try_emplace(key, 0);
    if (fresh) {
      if (keys.size() >= limits.max_states) {
        throw ResourceLimit(std::string(what) + ": state cap of " +
                            std::to_string(limits.max_states) + " exceeded");
      }
      it->second = out.add_state(accept(key));
      keys.push_back(std::move(key));
    }
    return it->second;
  };
  for (auto& key : initial) out.add_initial(intern(std::move(key)));
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const Key current = keys[i];
    expand(current, [&](Label label, Key&& next) {
      State dst = intern(std::move(next));
      out.add_transition(static_cast<State>(i), label, dst);
    });
  }
  out.finish();
  return out;
}

// Keeps only states reachable from the initial state of a DFA and numbers
// them in breadth-first order, edges visited in label order.
Automaton renumber_bfs(const Automaton& dfa) {
  Automaton out(dfa.alphabet(), dfa.tracks());
  if (dfa.initial().empty()) {
    out.add_initial(out.add_state(false));
    out.finish();
    return out;
  }
  std::vector<State> id(dfa.state_count(), kSink);
  std::vector<State> order;
  State start = dfa.initial().front();
  id[start] = 0;
  order.push_back(start);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (auto [label, dst] : dfa.edges(order[i])) {
      if (id[dst] == kSink) {
        id[dst] = static_cast<State>(order.size());
        order.push_back(dst);
      }
    }
  }
  for (State s : order) out.add_state(dfa.is_accepting(s));
  out.add_initial(0);
  for (State s : order) {
    for (auto [label, dst] : dfa.edges(s)) out.add_transition(id[s], label, id[dst]);
  }
  out.finish();
  return out;
}

Automaton empty_dfa(const Alphabet& alphabet, std::size_t tracks) {
  Automaton out(alphabet, tracks);
  out.add_initial(out.add_state(false));
  out.finish();
  return out;
}

}  // namespace

std::vector<Label> convolve(const LabelCodec& codec, Symbol pad, const Tuple& words) {
  std::size_t len = 0;
  for (const auto& w : words) len = std::max(len, w.size());
  std::vector<Label> out;
  out.reserve(len);
  std::vector<Symbol> column(words.size());
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t t = 0; t < words.size(); ++t) {
      column[t] = i < words[t].size() ? words[t][i] : pad;
    }
    out.push_back(codec.encode(column));
  }
  return out;
}

Automaton from_tuples(const Alphabet& alphabet, std::size_t tracks, std::span<const Tuple> tuples) {
  Automaton trie(alphabet, tracks);
  trie.add_initial(trie.add_state(false));
  std::vector<std::unordered_map<Label, State>> children(1);
  for (const auto& tuple : tuples) {
    if (tuple.size() != tracks) throw InputError("tuple arity does not match track count");
    for (const auto& w : tuple) {
      for (Symbol s : w) {
        if (s >= alphabet.size()) throw InputError("tuple contains a foreign letter");
      }
    }
    State s = 0;
    for (Label label : convolve(trie.codec(), alphabet.pad(), tuple)) {
      auto it = children[s].find(label);
      if (it == children[s].end()) {
        State next = trie.add_state(false);
        children.emplace_back();
        trie.add_transition(s, label, next);
        children[s].emplace(label, next);
        s = next;
      } else {
        s = it->second;
      }
    }
    trie.set_accepting(s, true);
  }
  trie.finish();
  return minimize(trie);
}

Automaton constant_automaton(const Alphabet& alphabet, bool value) {
  Automaton out(alphabet, 0);
  out.add_initial(out.add_state(value));
  out.finish();
  return out;
}

Automaton all_words(const Alphabet& alphabet) {
  Automaton out(alphabet, 1);
  State s = out.add_state(true);
  out.add_initial(s);
  for (Symbol c = 0; c < alphabet.size(); ++c) out.add_transition(s, Label{c}, s);
  out.finish();
  return out;
}

Automaton valid_convolutions(const Alphabet& alphabet, std::size_t tracks) {
  return universe_power(all_words(alphabet), tracks);
}

Automaton determinize(const Automaton& a, const Limits& limits) {
  Key start(a.initial().begin(), a.initial().end());
  std::vector<Automaton::Edge> buffer;
  return explore(
      a.alphabet(), a.tracks(), {std::move(start)},
      [&](const Key& subset, auto&& emit) {
        buffer.clear();
        for (State s : subset) {
          auto edges = a.edges(s);
          buffer.insert(buffer.end(), edges.begin(), edges.end());
        }
        std::sort(buffer.begin(), buffer.end());
        for (std::size_t i = 0; i < buffer.size();) {
          Label label = buffer[i].first;
          Key next;
          for (; i < buffer.size() && buffer[i].first == label; ++i) {
            if (next.empty() || next.back() != buffer[i].second) next.push_back(buffer[i].second);
          }
          emit(label, std::move(next));
        }
      },
      [&](const Key& subset) {
        return std::any_of(subset.begin(), subset.end(),
                           [&](State s) { return a.is_accepting(s); });
      },
      limits, "determinize");
}

Automaton trim(const Automaton& a) {
  const std::size_t n = a.state_count();
  std::vector<char> forward(n, 0), backward(n, 0);
  std::vector<State> stack(a.initial().begin(), a.initial().end());
  for (State s : stack) forward[s] = 1;
  std::vector<std::vector<State>> reverse(n);
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (auto [label, dst] : a.edges(s)) {
      if (!forward[dst]) {
        forward[dst] = 1;
        stack.push_back(dst);
      }
    }
  }
  for (State s = 0; s < n; ++s) {
    if (!forward[s]) continue;
    for (auto [label, dst] : a.edges(s)) reverse[dst].push_back(s);
    if (a.is_accepting(s)) {
      backward[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (State p : reverse[s]) {
      if (!backward[p]) {
        backward[p] = 1;
        stack.push_back(p);
      }
    }
  }
  Automaton out(a.alphabet(), a.tracks());
  std::vector<State> id(n, kSink);
  for (State s = 0; s < n; ++s) {
    if (forward[s] && backward[s]) id[s] = out.add_state(a.is_accepting(s));
  }
  for (State s : a.initial()) {
    if (id[s] != kSink) out.add_initial(id[s]);
  }
  for (State s = 0; s < n; ++s) {
    if (id[s] == kSink) continue;
    for (auto [label, dst] : a.edges(s)) {
      if (id[dst] != kSink) out.add_transition(id[s], label, id[dst]);
    }
  }
  out.finish();
  return out;
}

Automaton minimize(const Automaton& a, const Limits& limits) {
  Automaton dfa = trim(a.is_deterministic() ? a : determinize(a, limits));
  if (dfa.initial().empty()) return empty_dfa(a.alphabet(), a.tracks());
  const std::size_t n = dfa.state_count();

  // Moore refinement; missing edges lead to the implicit dead state, which
  // is distinct from every state of a trim automaton.
  std::vector<std::uint32_t> cls(n);
  for (State s = 0; s < n; ++s) cls[s] = dfa.is_accepting(s) ? 1 : 0;
  std::size_t count = 0;
  std::vector<std::uint64_t> signature;
  while (true) {
    std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, KeyHash> ids;
    std::vector<std::uint32_t> next(n);
    for (State s = 0; s < n; ++s) {
      signature.clear();
      signature.push_back(cls[s]);
      for (auto [label, dst] : dfa.edges(s)) {
        signature.push_back(label);
        signature.push_back(cls[dst]);
      }
      auto [it, fresh] = ids.try_emplace(signature, static_cast<std::uint32_t>(ids.size()));
      next[s] = it->second;
    }
    bool stable = ids.size() == count;
    count = ids.size();
    cls.swap(next);
    if (stable) break;
  }

  Automaton quotient(a.alphabet(), a.tracks());
  std::vector<State> representative(count, kSink);
  for (State s = 0; s < n; ++s) {
    if (representative[cls[s]] == kSink) representative[cls[s]] = s;
  }
  for (std::uint32_t c = 0; c < count; ++c) quotient.add_state(dfa.is_accepting(representative[c]));
  quotient.add_initial(cls[dfa.initial().front()]);
  for (std::uint32_t c = 0; c < count; ++c) {
    for (auto [label, dst] : dfa.edges(representative[c])) {
      quotient.add_transition(c, label, cls[dst]);
    }
  }
  quotient.finish();
  return renumber_bfs(quotient);
}

Automaton canonicalize(const Automaton& a, const Limits& limits) {
  Automaton m = minimize(a, limits);
  const Label labels = m.codec().all_pad();  // codes 0 .. all_pad-1 are usable
  bool complete = true;
  for (State s = 0; s < m.state_count(); ++s) {
    if (m.edges(s).size() != labels) complete = false;
  }
  if (complete) return m;
  const bool empty_language = m.state_count() == 1 && !m.is_accepting(0) && m.edges(0).empty();
  const std::size_t states = empty_language ? 1 : m.state_count() + 1;
  if (static_cast<double>(states) * static_cast<double>(labels) >
      static_cast<double>(limits.max_transitions)) {
    throw ResourceLimit("canonicalize: complete DFA would need more than " +
                        std::to_string(limits.max_transitions) + " transitions");
  }
  Automaton full(m.alphabet(), m.tracks());
  for (State s = 0; s < states; ++s) full.add_state(s < m.state_count() && m.is_accepting(s));
  const State sink = static_cast<State>(states - 1);
  full.add_initial(0);
  for (State s = 0; s < states; ++s) {
    auto edges = s < m.state_count() ? m.edges(s) : std::span<const Automaton::Edge>{};
    std::size_t j = 0;
    for (Label l = 0; l < labels; ++l) {
      if (j < edges.size() && edges[j].first == l) {
        full.add_transition(s, l, edges[j].second);
        ++j;
      } else {
        full.add_transition(s, l, sink);
      }
    }
  }
  full.finish();
  return renumber_bfs(full);
}

Automaton intersect(const Automaton& a, const Automaton& b, const Limits& limits) {
  require_compatible(a, b, "intersect");
  std::vector<Key> initial;
  for (State p : a.initial()) {
    for (State q : b.initial()) initial.push_back({p, q});
  }
  return explore(
      a.alphabet(), a.tracks(), std::move(initial),
      [&](const Key& key, auto&& emit) {
        auto ea = a.edges(key[0]);
        auto eb = b.edges(key[1]);
        std::size_t i = 0, j = 0;
        while (i < ea.size() && j < eb.size()) {
          if (ea[i].first < eb[j].first) {
            ++i;
          } else if (eb[j].first < ea[i].first) {
            ++j;
          } else {
            Label label = ea[i].first;
            std::size_t j_end = j;
            while (j_end < eb.size() && eb[j_end].first == label) ++j_end;
            for (; i < ea.size() && ea[i].first == label; ++i) {
              for (std::size_t k = j; k < j_end; ++k) emit(label, Key{ea[i].second, eb[k].second});
            }
            j = j_end;
          }
        }
      },
      [&](const Key& key) { return a.is_accepting(key[0]) && b.is_accepting(key[1]); }, limits,
      "intersect");
}

Automaton unite(const Automaton& a, const Automaton& b) {
  require_compatible(a, b, "unite");
  Automaton out(a.alphabet(), a.tracks());
  const auto offset = static_cast<State>(a.state_count());
  for (State s = 0; s < a.state_count(); ++s) out.add_state(a.is_accepting(s));
  for (State s = 0; s < b.state_count(); ++s) out.add_state(b.is_accepting(s));
  for (State s : a.initial()) out.add_initial(s);
  for (State s : b.initial()) out.add_initial(s + offset);
  for (State s = 0; s < a.state_count(); ++s) {
    for (auto [label, dst] : a.edges(s)) out.add_transition(s, label, dst);
  }
  for (State s = 0; s < b.state_count(); ++s) {
    for (auto [label, dst] : b.edges(s)) out.add_transition(s + offset, label, dst + offset);
  }
  out.finish();
  return out;
}

Automaton difference(const Automaton& a, const Automaton& b, const Limits& limits) {
  require_compatible(a, b, "difference");
  const Automaton db = b.is_deterministic() ? b : determinize(b, limits);
  const std::uint32_t start = db.initial().empty() ? kSink : db.initial().front();
  std::vector<Key> initial;
  for (State p : a.initial()) initial.push_back({p, start});
  return explore(
      a.alphabet(), a.tracks(), std::move(initial),
      [&](const Key& key, auto&& emit) {
        for (auto [label, dst] : a.edges(key[0])) {
          std::uint32_t q = kSink;
          if (key[1] != kSink) {
            if (auto next = db.step(key[1], label)) q = *next;
          }
          emit(label, Key{dst, q});
        }
      },
      [&](const Key& key) {
        return a.is_accepting(key[0]) && (key[1] == kSink || !db.is_accepting(key[1]));
      },
      limits, "difference");
}

Automaton boolean_combine(const Automaton& a, const Automaton& b, Connective conn,
                          const Limits& limits) {
  switch (conn) {
    case Connective::And:
      return intersect(a, b, limits);
    case Connective::Or:
      return unite(a, b);
    case Connective::Minus:
      return difference(a, b, limits);
  }
  throw InputError("unknown connective");
}

Automaton substitute_tracks(const Automaton& a, std::span<const std::size_t> map,
                            std::size_t tracks, const Automaton& universe,
                            const Limits& limits) {
  if (map.size() != a.tracks()) {
    throw InputError("substitute_tracks: map has " + std::to_string(map.size()) +
                     " entries for " + std::to_string(a.tracks()) + " tracks");
  }
  for (std::size_t target : map) {
    if (target >= tracks) throw InputError("substitute_tracks: track index out of range");
  }
  if (universe.tracks() != 1) throw InputError("substitute_tracks: universe must have 1 track");
  if (!(universe.alphabet() == a.alphabet())) {
    throw InputError("substitute_tracks: alphabet mismatch");
  }
  const Automaton u = minimize(universe, limits);
  const Alphabet& alphabet = a.alphabet();
  const Symbol pad = alphabet.pad();
  const LabelCodec out_codec(alphabet.size() + 1, tracks);
  const Label all_pad = out_codec.all_pad();
  const LabelCodec& in_codec = a.codec();

  std::vector<char> bound(tracks, 0);
  for (std::size_t target : map) bound[target] = 1;
  std::vector<std::size_t> free_tracks;
  for (std::size_t t = 0; t < tracks; ++t) {
    if (!bound[t]) free_tracks.push_back(t);
  }

  // Key layout: [state of a or kDone, state of u or kDone per free track].
  std::vector<Key> initial;
  for (State s : a.initial()) {
    Key key{s};
    key.resize(1 + free_tracks.size(), u.initial().front());
    initial.push_back(std::move(key));
  }
  constexpr Symbol kUnset = std::numeric_limits<Symbol>::max();
  constexpr Label kAllPadIn = std::numeric_limits<Label>::max();

  std::vector<std::pair<Label, std::uint32_t>> a_options;
  std::vector<std::vector<std::pair<Symbol, std::uint32_t>>> free_options(free_tracks.size());
  std::vector<Symbol> column(tracks);

  return explore(
      alphabet, tracks, std::move(initial),
      [&](const Key& key, auto&& emit) {
        a_options.clear();
        if (key[0] != kDone) {
          for (auto [label, dst] : a.edges(key[0])) a_options.emplace_back(label, dst);
          if (a.is_accepting(key[0])) a_options.emplace_back(kAllPadIn, kDone);
        } else {
          a_options.emplace_back(kAllPadIn, kDone);
        }
        for (std::size_t f = 0; f < free_tracks.size(); ++f) {
          auto& options = free_options[f];
          options.clear();
          const std::uint32_t us = key[1 + f];
          if (us != kDone) {
            for (auto [label, dst] : u.edges(us)) options.emplace_back(static_cast<Symbol>(label), dst);
            if (u.is_accepting(us)) options.emplace_back(pad, kDone);
          } else {
            options.emplace_back(pad, kDone);
          }
          if (options.empty()) return;
        }
        std::vector<std::size_t> pick(free_tracks.size(), 0);
        for (auto [in_label, a_next] : a_options) {
          std::fill(column.begin(), column.end(), kUnset);
          bool consistent = true;
          for (std::size_t i = 0; i < map.size() && consistent; ++i) {
            Symbol sym = in_label == kAllPadIn ? pad : in_codec.at(in_label, i);
            Symbol& slot = column[map[i]];
            if (slot == kUnset) {
              slot = sym;
            } else if (slot != sym) {
              consistent = false;
            }
          }
          if (!consistent) continue;
          Label bound_part = 0;
          for (std::size_t t = 0; t < tracks; ++t) {
            if (bound[t]) bound_part += out_codec.weight(t) * column[t];
          }
          std::fill(pick.begin(), pick.end(), 0);
          while (true) {
            Label label = bound_part;
            Key next(1 + free_tracks.size());
            next[0] = a_next;
            for (std::size_t f = 0; f < free_tracks.size(); ++f) {
              const auto& opt = free_options[f][pick[f]];
              label += out_codec.weight(free_tracks[f]) * opt.first;
              next[1 + f] = opt.second;
            }
            if (label != all_pad) emit(label, std::move(next));
            std::size_t f = 0;
            for (; f < free_tracks.size(); ++f) {
              if (++pick[f] < free_options[f].size()) break;
              pick[f] = 0;
            }
            if (f == free_tracks.size()) break;
          }
        }
      },
      [&](const Key& key) {
        if (key[0] != kDone && !a.is_accepting(key[0])) return false;
        for (std::size_t f = 0; f < free_tracks.size(); ++f) {
          if (key[1 + f] != kDone && !u.is_accepting(key[1 + f])) return false;
        }
        return true;
      },
      limits, "substitute_tracks");
}

Automaton cylindrify(const Automaton& a, std::size_t position, const Automaton& universe,
                     const Limits& limits) {
  if (position > a.tracks()) throw InputError("cylindrify: position out of range");
  std::vector<std::size_t> map(a.tracks());
  for (std::size_t i = 0; i < a.tracks(); ++i) map[i] = i < position ? i : i + 1;
  return substitute_tracks(a, map, a.tracks() + 1, universe, limits);
}

Automaton universe_power(const Automaton& universe, std::size_t tracks, const Limits& limits) {
  return substitute_tracks(constant_automaton(universe.alphabet(), true), {}, tracks, universe,
                           limits);
}

Automaton complement_within(const Automaton& a, const Automaton& universe, const Limits& limits) {
  return difference(universe_power(universe, a.tracks(), limits), a, limits);
}

Automaton complement(const Automaton& a, const Limits& limits) {
  return minimize(complement_within(a, all_words(a.alphabet()), limits), limits);
}

Automaton project(const Automaton& a, std::size_t position) {
  if (a.tracks() == 0 || position >= a.tracks()) {
    throw InputError("project: track index out of range");
  }
  const std::size_t k = a.tracks();
  Automaton out(a.alphabet(), k - 1);
  const LabelCodec& in = a.codec();
  const Label out_pad = out.codec().all_pad();
  const std::size_t n = a.state_count();
  for (State s = 0; s < n; ++s) out.add_state(a.is_accepting(s));
  for (State s : a.initial()) out.add_initial(s);
  std::vector<std::vector<State>> eps_reverse(n);
  std::vector<Symbol> column(k - 1);
  for (State s = 0; s < n; ++s) {
    for (auto [label, dst] : a.edges(s)) {
      for (std::size_t t = 0, j = 0; t < k; ++t) {
        if (t != position) column[j++] = in.at(label, t);
      }
      Label projected = out.codec().encode(column);
      if (projected == out_pad) {
        eps_reverse[dst].push_back(s);
      } else {
        out.add_transition(s, projected, dst);
      }
    }
  }
  // Pad-closure: a state is accepting if trailing steps that only advance
  // the dropped track lead to acceptance.
  std::vector<State> stack;
  for (State s = 0; s < n; ++s) {
    if (a.is_accepting(s)) stack.push_back(s);
  }
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (State p : eps_reverse[s]) {
      if (!out.is_accepting(p)) {
        out.set_accepting(p, true);
        stack.push_back(p);
      }
    }
  }
  out.finish();
  return out;
}

bool is_empty(const Automaton& a) {
  std::vector<char> seen(a.state_count(), 0);
  std::vector<State> stack(a.initial().begin(), a.initial().end());
  for (State s : stack) seen[s] = 1;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    if (a.is_accepting(s)) return false;
    for (auto [label, dst] : a.edges(s)) {
      if (!seen[dst]) {
        seen[dst] = 1;
        stack.push_back(dst);
      }
    }
  }
  return true;
}

bool equivalent(const Automaton& a, const Automaton& b, const Limits& limits) {
  require_compatible(a, b, "equivalent");
  return is_empty(difference(a, b, limits)) && is_empty(difference(b, a, limits));
}

bool accepts(const Automaton& a, const Tuple& words) {
  if (words.size() != a.tracks()) {
    throw InputError("accepts: expected " + std::to_string(a.tracks()) + " words, got " +
                     std::to_string(words.size()));
  }
  for (const auto& w : words) {
    for (Symbol s : w) {
      if (s >= a.alphabet().size()) throw InputError("accepts: foreign letter");
    }
  }
  std::vector<char> current(a.state_count(), 0), next(a.state_count(), 0);
  for (State s : a.initial()) current[s] = 1;
  for (Label label : convolve(a.codec(), a.alphabet().pad(), words)) {
    std::fill(next.begin(), next.end(), 0);
    bool any = false;
    for (State s = 0; s < a.state_count(); ++s) {
      if (!current[s]) continue;
      for (auto [l, dst] : a.edges(s)) {
        if (l == label) {
          next[dst] = 1;
          any = true;
        }
      }
    }
    if (!any) return false;
    current.swap(next);
  }
  for (State s = 0; s < a.state_count(); ++s) {
    if (current[s] && a.is_accepting(s)) return true;
  }
  return false;
}

namespace {

Tuple labels_to_tuple(const LabelCodec& codec, Symbol pad, const std::vector<Label>& labels) {
  Tuple out(codec.tracks());
  for (Label l : labels) {
    for (std::size_t t = 0; t < codec.tracks(); ++t) {
      Symbol s = codec.at(l, t);
      if (s != pad) out[t].push_back(s);
    }
  }
  return out;
}

}  // namespace

std::optional<Tuple> shortest_witness(const Automaton& a, const Limits& limits) {
  const Automaton d = determinize(a, limits);
  const State start = d.initial().front();
  std::vector<std::pair<State, Label>> parent(d.state_count(), {kSink, 0});
  std::vector<char> seen(d.state_count(), 0);
  std::deque<State> queue{start};
  seen[start] = 1;
  std::optional<State> found;
  if (d.is_accepting(start)) found = start;
  while (!found && !queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (auto [label, dst] : d.edges(s)) {
      if (seen[dst]) continue;
      seen[dst] = 1;
      parent[dst] = {s, label};
      if (d.is_accepting(dst)) {
        found = dst;
        break;
      }
      queue.push_back(dst);
    }
  }
  if (!found) return std::nullopt;
  std::vector<Label> labels;
  for (State s = *found; s != start; s = parent[s].first) labels.push_back(parent[s].second);
  std::reverse(labels.begin(), labels.end());
  return labels_to_tuple(d.codec(), d.alphabet().pad(), labels);
}

std::vector<Tuple> enumerate_upto(const Automaton& a, std::size_t max_len, const Limits& limits) {
  const Automaton d = trim(determinize(a, limits));
  std::vector<std::vector<Label>> found;
  if (!d.initial().empty()) {
    std::vector<Label> path;
    // Iterative DFS over (state, edge index).
    std::vector<std::pair<State, std::size_t>> stack{{d.initial().front(), 0}};
    if (d.is_accepting(d.initial().front())) found.push_back(path);
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      auto edges = d.edges(s);
      if (i >= edges.size() || path.size() >= max_len) {
        stack.pop_back();
        if (!path.empty()) path.pop_back();
        continue;
      }
      auto [label, dst] = edges[i++];
      path.push_back(label);
      if (d.is_accepting(dst)) found.push_back(path);
      stack.emplace_back(dst, 0);
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  std::vector<Tuple> out;
  out.reserve(found.size());
  for (const auto& labels : found) {
    out.push_back(labels_to_tuple(d.codec(), d.alphabet().pad(), labels));
  }
  return out;
}

bool accepts_only_valid_convolutions(const Automaton& a, const Limits& limits) {
  return is_empty(difference(a, valid_convolutions(a.alphabet(), a.tracks()), limits));
}

bool is_finite(const Automaton& a) {
  const Automaton t = trim(a);
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<char> color(t.state_count(), 0);
  for (State root : t.initial()) {
    if (color[root]) continue;
    std::vector<std::pair<State, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      auto edges = t.edges(s);
      if (i >= edges.size()) {
        color[s] = 2;
        stack.pop_back();
        continue;
      }
      State dst = edges[i++].second;
      if (color[dst] == 1) return false;
      if (color[dst] == 0) {
        color[dst] = 1;
        stack.emplace_back(dst, 0);
      }
    }
  }
  return true;
}

Automaton concatenate(const Automaton& a, const Automaton& b) {
  require_compatible(a, b, "concatenate");
  if (a.tracks() != 1) throw InputError("concatenate: only 1-track languages are supported");
  Automaton out = unite(a, b);
  const auto offset = static_cast<State>(a.state_count());
  const bool b_nullable = std::any_of(b.initial().begin(), b.initial().end(),
                                      [&](State s) { return b.is_accepting(s); });
  const bool a_nullable = std::any_of(a.initial().begin(), a.initial().end(),
                                      [&](State s) { return a.is_accepting(s); });
  Automaton result(a.alphabet(), 1);
  for (State s = 0; s < out.state_count(); ++s) {
    bool acc = s >= offset ? out.is_accepting(s) : (a.is_accepting(s) && b_nullable);
    result.add_state(acc);
  }
  for (State s : a.initial()) result.add_initial(s);
  if (a_nullable) {
    for (State s : b.initial()) result.add_initial(s + offset);
  }
  for (State s = 0; s < out.state_count(); ++s) {
    for (auto [label, dst] : out.edges(s)) result.add_transition(s, label, dst);
  }
  for (State f = 0; f < a.state_count(); ++f) {
    if (!a.is_accepting(f)) continue;
    for (State i : b.initial()) {
      for (auto [label, dst] : b.edges(i)) result.add_transition(f, label, dst + offset);
    }
  }
  result.finish();
  return minimize(result);
}

namespace {

Automaton relabel(const Automaton& a, const Alphabet& target, bool drop_foreign) {
  std::vector<std::optional<Symbol>> to(a.alphabet().size() + 1);
  for (Symbol s = 0; s < a.alphabet().size(); ++s) {
    to[s] = target.find(a.alphabet().name(s));
    if (!to[s] && !drop_foreign) {
      throw InputError("letter '" + a.alphabet().name(s) + "' missing from target alphabet");
    }
  }
  to[a.alphabet().pad()] = target.pad();
  Automaton out(target, a.tracks());
  for (State s = 0; s < a.state_count(); ++s) out.add_state(a.is_accepting(s));
  for (State s : a.initial()) out.add_initial(s);
  std::vector<Symbol> column(a.tracks());
  for (State s = 0; s < a.state_count(); ++s) {
    for (auto [label, dst] : a.edges(s)) {
      bool keep = true;
      for (std::size_t t = 0; t < a.tracks(); ++t) {
        auto mapped = to[a.codec().at(label, t)];
        if (!mapped) {
          keep = false;
          break;
        }
        column[t] = *mapped;
      }
      if (keep) out.add_transition(s, out.codec().encode(column), dst);
    }
  }
  out.finish();
  return out;
}

}  // namespace

Automaton with_alphabet(const Automaton& a, const Alphabet& target) {
  if (a.alphabet() == target) return a;
  return relabel(a, target, false);
}

Automaton restrict_alphabet(const Automaton& a, const Alphabet& target) {
  return relabel(a, target, true);
}

}  // namespace epp
