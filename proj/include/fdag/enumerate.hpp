// The reverse-search enumeration tree over FDAGs: expansion rules, the
// antecedent reduction, depth-first streaming with incremental deltas,
// level counts, finiteness constraints, random walks and the presence-vector
// extension that reintroduces repetitions.
#pragma once

#include <atomic>
#include <cassert>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "fdag/dag.hpp"

namespace fdag {

struct Expansion {
  enum class Rule { Branching, Elongation, Widening, Repetition };
  Rule rule;
  Word::Letter letter = 0;  // Branching: appended letter. Elongation: the new
                            // vertex's only child. Repetition: the index j'.
  Word word;                // Widening: the new vertex's child word.
};

inline const char* rule_name(Expansion::Rule r) {
  switch (r) {
    case Expansion::Rule::Branching: return "branching";
    case Expansion::Rule::Elongation: return "elongation";
    case Expansion::Rule::Widening: return "widening";
    case Expansion::Rule::Repetition: return "repetition";
  }
  return "?";
}

// All expansions of d, in a fixed order: branching letters descending from
// the last letter of the top word, then elongation children ascending, then
// widening words in minimal-word construction order.
inline std::vector<Expansion> expansions(const Fdag& d) {
  std::vector<Expansion> out;
  const int n = d.vertex_count() - 1;
  const int p = d.height_boundary();
  const Word& top = d.child_word(n);
  if (!top.empty()) {
    for (Word::Letter a = top.back();; --a) {
      out.push_back({Expansion::Rule::Branching, a, {}});
      if (a == 0) break;
    }
  }
  for (int v = p + 1; v <= n; ++v)
    out.push_back({Expansion::Rule::Elongation, static_cast<Word::Letter>(v), {}});
  if (!top.empty()) {
    assert(p >= 0);
    for (Word& w : minimal_words(top, static_cast<Word::Letter>(p)))
      out.push_back({Expansion::Rule::Widening, 0, std::move(w)});
  }
  return out;
}

inline void apply(Fdag& d, const Expansion& e) {
  switch (e.rule) {
    case Expansion::Rule::Branching: d.append_letter(e.letter); break;
    case Expansion::Rule::Elongation: d.push_vertex(Word::single(e.letter)); break;
    case Expansion::Rule::Widening: d.push_vertex(e.word); break;
    case Expansion::Rule::Repetition: assert(false && "repetition does not act on the FDAG");
  }
}

inline void undo(Fdag& d, const Expansion& e) {
  switch (e.rule) {
    case Expansion::Rule::Branching: d.pop_letter(); break;
    case Expansion::Rule::Elongation:
    case Expansion::Rule::Widening: d.pop_vertex(); break;
    case Expansion::Rule::Repetition: assert(false && "repetition does not act on the FDAG");
  }
}

// Materialized successors (copying strategy).
inline std::vector<std::pair<Expansion, Fdag>> successors(const Fdag& d) {
  std::vector<std::pair<Expansion, Fdag>> out;
  std::vector<Expansion> exps = expansions(d);
  out.reserve(exps.size());
  for (Expansion& e : exps) {
    Fdag s = d;
    apply(s, e);
    out.emplace_back(std::move(e), std::move(s));
  }
  return out;
}

// The unique FDAG this one expands from, with the rule that regenerates it.
inline std::pair<Fdag, Expansion::Rule> antecedent(const Fdag& d) {
  if (d.vertex_count() == 1)
    throw std::invalid_argument("the single-vertex FDAG has no antecedent");
  const int n = d.vertex_count() - 1;
  const Word& w = d.child_word(n);
  Fdag prev = d;
  const bool alone_at_height = d.height_boundary() == n - 1;
  if (alone_at_height) {
    if (w.size() == 1) {
      prev.pop_vertex();
      return {std::move(prev), Expansion::Rule::Elongation};
    }
    prev.pop_letter();
    return {std::move(prev), Expansion::Rule::Branching};
  }
  if (is_minimal(w, d.child_word(n - 1))) {
    prev.pop_vertex();
    return {std::move(prev), Expansion::Rule::Widening};
  }
  prev.pop_letter();
  return {std::move(prev), Expansion::Rule::Branching};
}

// Length of the antecedent chain down to the single-vertex FDAG; a widening
// step can add several arcs at once, so this is not the arc count.
inline int steps_from_origin(const Fdag& d) {
  Fdag cur = d;
  int steps = 0;
  while (cur.vertex_count() > 1) {
    cur = antecedent(cur).first;
    ++steps;
  }
  return steps;
}

// ---------------------------------------------------------------------------
// Depth-first streaming.

// Anti-monotone property over the enumeration order; `steps` is the distance
// from the stream's start. Anti-monotonicity is a caller contract.
using Property = std::function<bool(const Fdag& d, int steps)>;

inline Property accept_all() {
  return [](const Fdag&, int) { return true; };
}

// Pull-based depth-first enumeration of every FDAG reachable from the start
// whose ancestors all satisfy the property. The current FDAG is mutated in
// place via expansion deltas, so memory stays proportional to the depth.
class EnumerationStream {
 public:
  explicit EnumerationStream(Fdag start, Property property = accept_all())
      : current_(std::move(start)), property_(std::move(property)) {}

  // Returns the next FDAG (the start itself first), or nullptr when done.
  // The pointee is only valid until the following call.
  const Fdag* next() {
    if (!started_) {
      started_ = true;
      stack_.push_back({{}, expansions(current_), 0});
      return &current_;
    }
    while (!stack_.empty()) {
      Frame& f = stack_.back();
      if (f.next < f.kids.size()) {
        const Expansion& e = f.kids[f.next++];
        apply(current_, e);
        if (property_(current_, static_cast<int>(stack_.size()))) {
          stack_.push_back({e, expansions(current_), 0});
          return &current_;
        }
        undo(current_, e);
      } else {
        Expansion via = std::move(f.via);
        bool at_start = stack_.size() == 1;
        stack_.pop_back();
        if (!at_start) undo(current_, via);
      }
    }
    return nullptr;
  }

  // Steps from the start of the most recently returned FDAG.
  int depth() const { return static_cast<int>(stack_.size()) - 1; }

 private:
  struct Frame {
    Expansion via;  // unused for the start frame
    std::vector<Expansion> kids;
    std::size_t next;
  };
  Fdag current_;
  Property property_;
  std::vector<Frame> stack_;
  bool started_ = false;
};

// Visitor-driven front end; the visitor may return false to stop early.
inline void reverse_search(const Fdag& start, const Property& property,
                           const std::function<bool(const Fdag&, int steps)>& visit) {
  EnumerationStream stream(start, property);
  while (const Fdag* d = stream.next())
    if (!visit(*d, stream.depth())) return;
}

// Number of FDAGs at each step count 0..max_steps, built with the copying
// strategy one level at a time. Successor sets of distinct FDAGs are
// disjoint, so levels need no deduplication.
inline std::vector<std::uint64_t> level_counts(int max_steps) {
  std::vector<std::uint64_t> counts{1};
  std::vector<Fdag> level{Fdag()};
  for (int k = 1; k <= max_steps; ++k) {
    std::vector<Fdag> next;
    std::uint64_t produced = 0;
    const bool keep = k < max_steps;
    for (const Fdag& d : level) {
      for (auto& [e, s] : successors(d)) {
        ++produced;
        if (keep) next.push_back(std::move(s));
      }
    }
    counts.push_back(produced);
    level = std::move(next);
  }
  return counts;
}

inline std::vector<std::uint64_t> parallel_level_counts(int max_steps, unsigned threads) {
  if (threads <= 1) return level_counts(max_steps);
  std::vector<std::uint64_t> counts{1};
  std::vector<Fdag> level{Fdag()};
  for (int k = 1; k <= max_steps; ++k) {
    const bool keep = k < max_steps;
    std::vector<std::vector<Fdag>> parts(threads);
    std::vector<std::uint64_t> produced(threads, 0);
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        std::size_t i;
        while ((i = cursor.fetch_add(1)) < level.size()) {
          for (auto& [e, s] : successors(level[i])) {
            ++produced[t];
            if (keep) parts[t].push_back(std::move(s));
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    std::uint64_t total = 0;
    std::vector<Fdag> next;
    for (unsigned t = 0; t < threads; ++t) {
      total += produced[t];
      next.insert(next.end(), std::make_move_iterator(parts[t].begin()),
                  std::make_move_iterator(parts[t].end()));
    }
    counts.push_back(total);
    level = std::move(next);
  }
  return counts;
}

// Subtree-parallel exploration: a shallow frontier is enumerated
// sequentially, then each frontier subtree runs on its own thread. Emission
// order is unspecified; the emit callback is serialized internally.
inline void parallel_reverse_search(const Fdag& start, const Property& property,
                                    unsigned threads,
                                    const std::function<void(const Fdag&, int steps)>& emit) {
  constexpr int kFrontierDepth = 4;
  std::vector<Fdag> frontier;
  {
    EnumerationStream stream(
        start, [&](const Fdag& d, int steps) { return steps <= kFrontierDepth && property(d, steps); });
    while (const Fdag* d = stream.next()) {
      if (stream.depth() == kFrontierDepth)
        frontier.push_back(*d);
      else
        emit(*d, stream.depth());
    }
  }
  std::mutex emit_mutex;
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  if (threads == 0) threads = 1;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      std::size_t i;
      while ((i = cursor.fetch_add(1)) < frontier.size()) {
        EnumerationStream stream(frontier[i], [&](const Fdag& d, int steps) {
          return property(d, steps + kFrontierDepth);
        });
        while (const Fdag* d = stream.next()) {
          std::scoped_lock lock(emit_mutex);
          emit(*d, stream.depth() + kFrontierDepth);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Constraints that keep the enumeration finite.

// Branching can repeat indefinitely unless the outdegree is capped, so a
// finite enumeration needs either a step cap or the outdegree bound combined
// with a vertex or height bound.
struct Constraint {
  std::optional<int> max_steps;
  std::optional<int> max_vertices;
  std::optional<int> max_outdegree;
  std::optional<int> max_height;

  bool finite() const {
    if (max_steps) return true;
    return max_outdegree && (max_vertices || max_height);
  }

  bool admits(const Fdag& d, int steps) const {
    if (max_steps && steps > *max_steps) return false;
    if (max_vertices && d.vertex_count() > *max_vertices) return false;
    if (max_outdegree && d.outdegree() > *max_outdegree) return false;
    if (max_height && d.top_height() > *max_height) return false;
    return true;
  }

  Property predicate() const {
    if (!finite())
      throw std::invalid_argument(
          "constraints do not guarantee a finite enumeration: need a step cap, "
          "or a maximum outdegree with a maximum vertex count or height");
    return [c = *this](const Fdag& d, int steps) { return c.admits(d, steps); };
  }
};

namespace detail {
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > static_cast<unsigned __int128>(UINT64_MAX))
      throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::uint64_t>(r);
}
}  // namespace detail

// Largest possible number of vertices at height h under outdegree bound d:
// a new vertex needs k >= 1 children at height h-1 and spends the remaining
// degree budget on anything lower, counted with multisets.
inline std::uint64_t max_vertices_at_height(int h, int d) {
  assert(h >= 0 && d >= 1);
  if (h == 0) return 1;
  std::vector<std::uint64_t> n(static_cast<std::size_t>(h) + 1, 0);
  n[0] = 1;
  if (h >= 1) n[1] = static_cast<std::uint64_t>(d);
  std::uint64_t below = 1;  // n_0 + ... + n_{level-2}
  for (int level = 2; level <= h; ++level) {
    std::uint64_t total = 0;
    for (int k = 1; k <= d; ++k)
      total += detail::binomial(static_cast<std::uint64_t>(k) + n[static_cast<std::size_t>(level - 1)] - 1,
                                static_cast<std::uint64_t>(k)) *
               detail::binomial(static_cast<std::uint64_t>(d - k) + below,
                                static_cast<std::uint64_t>(d - k));
    n[static_cast<std::size_t>(level)] = total;
    below += n[static_cast<std::size_t>(level - 1)];
  }
  return n[static_cast<std::size_t>(h)];
}

// A walk of `steps` uniform successor choices from the single-vertex FDAG;
// uniform per step, not uniform over the reachable set.
inline Fdag random_fdag(int steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Fdag d;
  for (int i = 0; i < steps; ++i) {
    std::vector<Expansion> exps = expansions(d);
    std::uniform_int_distribution<std::size_t> pick(0, exps.size() - 1);
    apply(d, exps[pick(rng)]);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Presence vectors: repetitions on top of an enumerated FDAG.

struct PresenceVector {
  std::vector<std::uint64_t> counts;
  int last_increment = 0;
  friend bool operator==(const PresenceVector&, const PresenceVector&) = default;
};

// Sources count once, every other vertex zero times.
inline PresenceVector initial_presence(const Fdag& d) {
  PresenceVector pv;
  pv.counts.assign(static_cast<std::size_t>(d.vertex_count()), 0);
  for (int s : d.sources()) pv.counts[static_cast<std::size_t>(s)] = 1;
  return pv;
}

// One successor per index j' >= the last incremented index; incrementing in
// nondecreasing index order makes every presence vector reachable once.
inline std::vector<PresenceVector> repetition_successors(const Fdag& d,
                                                         const PresenceVector& pv) {
  assert(pv.counts.size() == static_cast<std::size_t>(d.vertex_count()));
  std::vector<PresenceVector> out;
  for (int j = pv.last_increment; j < d.vertex_count(); ++j) {
    PresenceVector next = pv;
    ++next.counts[static_cast<std::size_t>(j)];
    next.last_increment = j;
    out.push_back(std::move(next));
  }
  return out;
}

// Combined node of the forest-with-repetitions enumeration: once a
// repetition step is taken the topology freezes, so each redundant forest is
// reached exactly once.
struct ForestState {
  Fdag dag;
  PresenceVector presence;
  bool frozen = false;
};

inline std::vector<ForestState> forest_successors(const ForestState& state) {
  std::vector<ForestState> out;
  if (!state.frozen) {
    for (auto& [e, s] : successors(state.dag)) {
      PresenceVector pv = initial_presence(s);
      out.push_back({std::move(s), std::move(pv), false});
    }
  }
  for (PresenceVector& pv : repetition_successors(state.dag, state.presence))
    out.push_back({state.dag, std::move(pv), true});
  return out;
}

}  // namespace fdag
