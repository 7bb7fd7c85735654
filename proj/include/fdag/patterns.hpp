// SubFDAGs: children-closed vertex subsets of a host FDAG, enumerated
// through heir states with candidate sets, plus origin tracking and the
// frequent-pattern variant with exact rational support thresholds.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdag/dag.hpp"

namespace fdag {

struct ClosureError : std::runtime_error {
  ClosureError(int v, Word::Letter c)
      : std::runtime_error("vertex set is not closed under children: vertex " +
                           std::to_string(v) + " has child " + std::to_string(c) +
                           " outside the set"),
        vertex(v),
        child(c) {}
  int vertex;
  Word::Letter child;
};

// The canonical FDAG induced by a children-closed vertex subset of the host.
inline Fdag induced_subfdag(const Fdag& d, std::vector<int> vertices) {
  if (vertices.empty()) throw std::invalid_argument("induced vertex set must be nonempty");
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::vector<bool> in(static_cast<std::size_t>(d.vertex_count()), false);
  for (int v : vertices) {
    if (v < 0 || v >= d.vertex_count()) throw std::invalid_argument("vertex index out of range");
    in[static_cast<std::size_t>(v)] = true;
  }
  for (int v : vertices)
    for (Word::Letter a : d.child_word(v).letters())
      if (!in[a]) throw ClosureError(v, a);
  return detail::reindex_subset(d, vertices);
}

// A subFDAG during enumeration: its vertex set, the candidates that may
// extend it, and the set of dataset trees containing all of it.
struct PatternState {
  std::vector<int> delta;       // ascending host vertex indices
  std::vector<int> candidates;  // ascending; all beyond last_vertex
  std::vector<int> origin;      // ascending 1-based tree indices
  int last_vertex = 0;
};

// origin[v] = trees whose subtrees include the tree compressed below v.
// Tree i+1 is rooted at tree_roots[i]; every vertex below a root belongs to
// that root's tree, so one downward sweep per root suffices.
inline std::vector<std::vector<int>> origins(const Fdag& d, const std::vector<int>& tree_roots) {
  std::vector<std::vector<int>> table(static_cast<std::size_t>(d.vertex_count()));
  for (std::size_t i = 0; i < tree_roots.size(); ++i) {
    std::vector<bool> seen(static_cast<std::size_t>(d.vertex_count()), false);
    std::vector<int> stack = {tree_roots[i]};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = true;
      table[static_cast<std::size_t>(v)].push_back(static_cast<int>(i) + 1);
      for (Word::Letter a : d.child_word(v).letters()) stack.push_back(static_cast<int>(a));
    }
  }
  return table;
}

// Default tree order: the sources in ascending canonical index.
inline std::vector<std::vector<int>> origins(const Fdag& d) { return origins(d, d.sources()); }

// Exact support threshold p/q with 0 <= p/q <= 1.
struct Support {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

namespace detail {

inline std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Shared heir-tree walk. Origins are tracked whenever a table is given;
// with `prune` set, heirs failing the origin test are never generated, which
// is sound because origins only shrink.
inline void subfdag_walk(const Fdag& d, const std::vector<std::vector<int>>* origin_table,
                         std::size_t forest_size, Support sigma, bool prune,
                         const std::function<bool(const PatternState&)>& visit) {
  // parents[a] ends up ascending because v runs upward; repeated letters sit
  // next to each other inside a decreasing word, so the dedup is local.
  std::vector<std::vector<int>> parents(static_cast<std::size_t>(d.vertex_count()));
  for (int v = 0; v < d.vertex_count(); ++v) {
    Word::Letter last = 0;
    bool first = true;
    for (Word::Letter a : d.child_word(v).letters()) {
      if (first || a != last) parents[a].push_back(v);
      first = false;
      last = a;
    }
  }

  auto passes = [&](const std::vector<int>& origin) {
    if (!prune) return true;
    if (origin.empty()) return false;
    return origin.size() * sigma.den >= sigma.num * forest_size;
  };

  std::vector<bool> in_delta(static_cast<std::size_t>(d.vertex_count()), false);
  in_delta[0] = true;
  PatternState root;
  root.delta = {0};
  root.last_vertex = 0;
  for (int v = 1; v < d.vertex_count(); ++v) {
    const Word& w = d.child_word(v);
    if (!w.empty() && w.front() == 0) root.candidates.push_back(v);
  }
  if (origin_table) root.origin = (*origin_table)[0];
  if (!passes(root.origin)) return;

  bool stopped = false;
  std::function<void(PatternState&)> rec = [&](PatternState& state) {
    if (stopped) return;
    if (!visit(state)) {
      stopped = true;
      return;
    }
    for (int s : state.candidates) {
      std::vector<int> origin;
      if (origin_table) {
        origin = intersect_sorted(state.origin, (*origin_table)[static_cast<std::size_t>(s)]);
        if (!passes(origin)) continue;
      }
      PatternState heir;
      heir.delta = state.delta;
      heir.delta.push_back(s);
      heir.last_vertex = s;
      heir.origin = std::move(origin);
      in_delta[static_cast<std::size_t>(s)] = true;
      // Keep candidates lying strictly above s in the word order, then adopt
      // every parent of s whose children now all lie inside the set.
      std::vector<int> fresh;
      for (int p : parents[static_cast<std::size_t>(s)]) {
        bool inside = true;
        for (Word::Letter a : d.child_word(p).letters()) inside &= in_delta[a];
        if (inside) fresh.push_back(p);
      }
      const Word& sword = d.child_word(s);
      std::vector<int> kept;
      for (int v : state.candidates)
        if (d.child_word(v) > sword) kept.push_back(v);
      heir.candidates.resize(kept.size() + fresh.size());
      std::merge(kept.begin(), kept.end(), fresh.begin(), fresh.end(), heir.candidates.begin());
      rec(heir);
      in_delta[static_cast<std::size_t>(s)] = false;
      if (stopped) return;
    }
  };
  rec(root);
}

inline std::uint64_t count_subfdags_plain(const Fdag& d) {
  std::uint64_t count = 0;
  subfdag_walk(d, nullptr, 0, {}, false, [&](const PatternState&) {
    ++count;
    return true;
  });
  return count;
}

}  // namespace detail

// Every subFDAG of d exactly once, starting from the leaf alone. Origins are
// reported against the default tree order (sources ascending).
inline void enumerate_subfdags(const Fdag& d,
                               const std::function<bool(const PatternState&)>& visit) {
  auto table = origins(d);
  detail::subfdag_walk(d, &table, table.empty() ? 0 : d.sources().size(), Support{0, 1},
                       false, [&](const PatternState& s) { return visit(s); });
}

inline std::uint64_t count_subfdags(const Fdag& d) { return detail::count_subfdags_plain(d); }

// Budgeted variant: empty when the host has more than max_states subFDAGs.
inline std::optional<std::uint64_t> count_subfdags(const Fdag& d, std::uint64_t max_states) {
  std::uint64_t count = 0;
  detail::subfdag_walk(d, nullptr, 0, {}, false, [&](const PatternState&) {
    ++count;
    return count <= max_states;
  });
  if (count > max_states) return std::nullopt;
  return count;
}

// SubFDAGs present in at least sigma of the dataset trees: states whose
// origin set is nonempty and meets #origin >= sigma * forest_size, compared
// in exact integer arithmetic.
inline void frequent_subfdags(const Fdag& d, const std::vector<std::vector<int>>& origin_table,
                              std::size_t forest_size, Support sigma,
                              const std::function<bool(const PatternState&)>& visit) {
  if (sigma.den == 0) throw std::invalid_argument("support threshold denominator is zero");
  if (sigma.num > sigma.den)
    throw std::invalid_argument("support threshold must lie in [0, 1]");
  detail::subfdag_walk(d, &origin_table, forest_size, sigma, true, visit);
}

struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

// Frequent enumeration on the whole host (threshold zero) against running
// the plain enumeration on each source's subDAG separately.
inline Ratio mining_quotient(const Fdag& d) {
  auto table = origins(d);
  std::uint64_t numerator = 0;
  frequent_subfdags(d, table, d.sources().size(), Support{0, 1}, [&](const PatternState&) {
    ++numerator;
    return true;
  });
  std::uint64_t denominator = 0;
  for (int r : d.sources()) denominator += detail::count_subfdags_plain(subdag(d, r));
  std::uint64_t g = std::gcd(numerator, denominator);
  if (g == 0) return {0, 1};
  return {numerator / g, denominator / g};
}

}  // namespace fdag
