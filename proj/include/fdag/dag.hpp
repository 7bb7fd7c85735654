// FDAGs: DAG reductions of irredundant forests kept in their canonical
// vertex order, with validation, compression (reduce), decompression
// (expand), subDAG extraction and the text file format.
#pragma once

#include <algorithm>
#include <cassert>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fdag/trees.hpp"
#include "fdag/words.hpp"

namespace fdag {

enum class Violation {
  None,
  EmptyGraph,          // no vertices at all
  ChildAboveParent,    // some child index is not smaller than its parent's
  DuplicateChildWord,  // two vertices share the same child multiset
  HeightOrder,         // heights are not nondecreasing along the order
  LevelWordOrder,      // equal-height child words not strictly increasing
};

struct Validation {
  Violation kind = Violation::None;
  int vertex = -1;
  std::string message;
  bool ok() const { return kind == Violation::None; }
};

// Checks whether an ordered vertex list with child words is a canonically
// ordered FDAG. Heights are recomputed from scratch, so the input only needs
// the child words to be syntactically well formed.
inline Validation validate(const std::vector<Word>& words) {
  if (words.empty()) return {Violation::EmptyGraph, -1, "graph has no vertices"};
  const int n = static_cast<int>(words.size());
  for (int v = 0; v < n; ++v)
    for (Word::Letter a : words[static_cast<std::size_t>(v)].letters())
      if (static_cast<int>(a) >= v)
        return {Violation::ChildAboveParent, v,
                "vertex " + std::to_string(v) + " references child " + std::to_string(a) +
                    " not strictly below it"};
  {
    std::vector<const Word*> sorted;
    sorted.reserve(static_cast<std::size_t>(n));
    for (const Word& w : words) sorted.push_back(&w);
    std::sort(sorted.begin(), sorted.end(), [](const Word* a, const Word* b) { return *a < *b; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (*sorted[i - 1] == *sorted[i])
        return {Violation::DuplicateChildWord, -1,
                "two vertices share the child word \"" + sorted[i]->to_text() + "\""};
  }
  std::vector<int> height(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    for (Word::Letter a : words[static_cast<std::size_t>(v)].letters())
      height[static_cast<std::size_t>(v)] =
          std::max(height[static_cast<std::size_t>(v)], height[a] + 1);
  for (int v = 1; v < n; ++v) {
    if (height[static_cast<std::size_t>(v)] < height[static_cast<std::size_t>(v - 1)])
      return {Violation::HeightOrder, v,
              "vertex " + std::to_string(v) + " has smaller height than vertex " +
                  std::to_string(v - 1)};
    if (height[static_cast<std::size_t>(v)] == height[static_cast<std::size_t>(v - 1)] &&
        words[static_cast<std::size_t>(v)] <= words[static_cast<std::size_t>(v - 1)])
      return {Violation::LevelWordOrder, v,
              "equal-height vertices " + std::to_string(v - 1) + " and " + std::to_string(v) +
                  " have non-increasing child words"};
  }
  return {};
}

// A FDAG in canonical order. Vertex 0 is the unique leaf; each vertex stores
// its children as a decreasing word of vertex indices (multiplicity by
// repetition). Values are immutable in normal use; the push/pop mutators
// exist for single-owner incremental enumeration.
class Fdag {
 public:
  Fdag() : child_words_(1), heights_(1, 0) {}

  explicit Fdag(std::vector<Word> words) {
    Validation v = validate(words);
    if (!v.ok()) throw std::invalid_argument("not a canonical FDAG: " + v.message);
    child_words_ = std::move(words);
    heights_.assign(child_words_.size(), 0);
    for (std::size_t i = 0; i < child_words_.size(); ++i)
      for (Word::Letter a : child_words_[i].letters())
        heights_[i] = std::max(heights_[i], heights_[a] + 1);
  }

  int vertex_count() const { return static_cast<int>(child_words_.size()); }
  const Word& child_word(int v) const { return child_words_[static_cast<std::size_t>(v)]; }
  const std::vector<Word>& child_words() const { return child_words_; }
  int height(int v) const { return heights_[static_cast<std::size_t>(v)]; }
  int top_height() const { return heights_.back(); }

  // Index of the last vertex strictly below the top height; -1 when every
  // vertex sits at the top (the single-vertex FDAG).
  int height_boundary() const {
    auto it = std::lower_bound(heights_.begin(), heights_.end(), heights_.back());
    return static_cast<int>(it - heights_.begin()) - 1;
  }

  // Total arc multiplicity.
  std::size_t arc_count() const {
    std::size_t total = 0;
    for (const Word& w : child_words_) total += w.size();
    return total;
  }

  int outdegree() const {
    std::size_t d = 0;
    for (const Word& w : child_words_) d = std::max(d, w.size());
    return static_cast<int>(d);
  }

  std::vector<int> sources() const {
    std::vector<bool> referenced(child_words_.size(), false);
    for (const Word& w : child_words_)
      for (Word::Letter a : w.letters()) referenced[a] = true;
    std::vector<int> out;
    for (int v = 0; v < vertex_count(); ++v)
      if (!referenced[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
  }

  // Single-owner mutators used by the enumeration to apply and undo
  // expansion steps in place.
  void append_letter(Word::Letter a) {
    assert(!child_words_.back().empty());
    child_words_.back().append(a);
  }
  void pop_letter() {
    assert(child_words_.back().size() >= 2);
    child_words_.back().pop_back();
  }
  void push_vertex(Word w) {
    assert(!w.empty() && static_cast<int>(w.front()) < vertex_count());
    int h = heights_[w.front()] + 1;
    assert(h >= top_height());
    child_words_.push_back(std::move(w));
    heights_.push_back(h);
  }
  void pop_vertex() {
    assert(vertex_count() >= 2);
    child_words_.pop_back();
    heights_.pop_back();
  }

  friend bool operator==(const Fdag&, const Fdag&) = default;

 private:
  std::vector<Word> child_words_;
  std::vector<int> heights_;  // derived from the words, kept in step
};

inline Validation validate(const Fdag& d) { return validate(d.child_words()); }

// ---------------------------------------------------------------------------
// Compression and decompression.

struct RedundancyError : std::runtime_error {
  RedundancyError(int inner, int outer)
      : std::runtime_error("redundant forest: tree " + std::to_string(inner + 1) +
                           " is a subtree of tree " + std::to_string(outer + 1)),
        inner_tree(inner),
        outer_tree(outer) {}
  int inner_tree;  // 0-based indices into the input forest
  int outer_tree;
};

struct ReduceResult {
  Fdag dag;
  std::vector<int> tree_roots;  // canonical vertex compressing each input tree
};

// One DAG vertex per isomorphism class of subtrees across the forest,
// emitted in canonical order. Rejects empty and redundant inputs.
inline ReduceResult reduce_with_roots(const Forest& forest) {
  if (forest.empty()) throw std::invalid_argument("cannot reduce an empty forest");

  std::unordered_map<std::string, int> class_of;
  std::vector<std::vector<int>> class_children;  // class ids, unsorted
  std::vector<int> class_height;
  std::vector<int> root_class(forest.size());

  for (std::size_t ti = 0; ti < forest.size(); ++ti) {
    const Tree& t = forest[ti];
    auto sigs = vertex_signatures(t);
    std::vector<int> cls(static_cast<std::size_t>(t.vertex_count()), -1);
    for (int v = t.vertex_count() - 1; v >= 0; --v) {
      auto [it, inserted] = class_of.try_emplace(sigs[static_cast<std::size_t>(v)],
                                                 static_cast<int>(class_children.size()));
      if (inserted) {
        std::vector<int> kids;
        int h = 0;
        for (int c : t.children(v)) {
          kids.push_back(cls[static_cast<std::size_t>(c)]);
          h = std::max(h, class_height[static_cast<std::size_t>(cls[static_cast<std::size_t>(c)])] + 1);
        }
        class_children.push_back(std::move(kids));
        class_height.push_back(h);
      }
      cls[static_cast<std::size_t>(v)] = it->second;
    }
    root_class[ti] = cls[0];
  }

  // Redundancy: identical roots, or a root reachable from another root.
  for (std::size_t i = 0; i < forest.size(); ++i)
    for (std::size_t j = 0; j < forest.size(); ++j) {
      if (i == j) continue;
      if (root_class[i] == root_class[j]) {
        if (i < j) throw RedundancyError(static_cast<int>(j), static_cast<int>(i));
        continue;
      }
      std::vector<int> stack = {root_class[j]};
      std::vector<bool> seen(class_children.size(), false);
      while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        if (seen[static_cast<std::size_t>(c)]) continue;
        seen[static_cast<std::size_t>(c)] = true;
        if (c == root_class[i]) throw RedundancyError(static_cast<int>(i), static_cast<int>(j));
        for (int k : class_children[static_cast<std::size_t>(c)]) stack.push_back(k);
      }
    }

  // Canonical order: heights ascending; inside a height, child words compare
  // with the final indices of the lower levels, which are already assigned.
  const int n_classes = static_cast<int>(class_children.size());
  int max_h = 0;
  for (int h : class_height) max_h = std::max(max_h, h);
  std::vector<std::vector<int>> by_height(static_cast<std::size_t>(max_h) + 1);
  for (int c = 0; c < n_classes; ++c)
    by_height[static_cast<std::size_t>(class_height[static_cast<std::size_t>(c)])].push_back(c);

  std::vector<int> final_index(static_cast<std::size_t>(n_classes), -1);
  std::vector<Word> words;
  words.reserve(static_cast<std::size_t>(n_classes));
  int next = 0;
  for (auto& level : by_height) {
    std::vector<std::pair<Word, int>> block;
    block.reserve(level.size());
    for (int c : level) {
      std::vector<Word::Letter> letters;
      for (int k : class_children[static_cast<std::size_t>(c)])
        letters.push_back(static_cast<Word::Letter>(final_index[static_cast<std::size_t>(k)]));
      std::sort(letters.rbegin(), letters.rend());
      block.emplace_back(Word(std::move(letters)), c);
    }
    std::sort(block.begin(), block.end());
    for (std::size_t i = 1; i < block.size(); ++i)
      assert(block[i - 1].first != block[i].first);
    for (auto& [w, c] : block) {
      final_index[static_cast<std::size_t>(c)] = next++;
      words.push_back(std::move(w));
    }
  }

  ReduceResult out{Fdag(std::move(words)), {}};
  out.tree_roots.reserve(forest.size());
  for (std::size_t i = 0; i < forest.size(); ++i)
    out.tree_roots.push_back(final_index[static_cast<std::size_t>(root_class[i])]);
  return out;
}

inline Fdag reduce(const Forest& forest) { return reduce_with_roots(forest).dag; }

// Canonical text of the tree compressed by each vertex, bottom-up.
inline std::vector<std::string> vertex_tree_texts(const Fdag& d) {
  std::vector<std::string> text(static_cast<std::size_t>(d.vertex_count()));
  for (int v = 0; v < d.vertex_count(); ++v) {
    std::vector<std::string> parts;
    parts.reserve(d.child_word(v).size());
    for (Word::Letter a : d.child_word(v).letters()) parts.push_back(text[a]);
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto& p : parts) s += p;
    s.push_back(')');
    text[static_cast<std::size_t>(v)] = std::move(s);
  }
  return text;
}

// One tree per source, in ascending source order; inverse of reduce.
inline Forest expand(const Fdag& d) {
  auto texts = vertex_tree_texts(d);
  Forest out;
  for (int s : d.sources()) out.push_back(Tree::parse(texts[static_cast<std::size_t>(s)]));
  return out;
}

namespace detail {
// Restriction of d to a sorted vertex subset closed under children,
// re-indexed canonically. The relative order is preserved, which keeps the
// ordering canonical because index renaming is monotone.
inline Fdag reindex_subset(const Fdag& d, const std::vector<int>& vertices) {
  std::vector<int> new_index(static_cast<std::size_t>(d.vertex_count()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    new_index[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
  std::vector<Word> words;
  words.reserve(vertices.size());
  for (int v : vertices) {
    std::vector<Word::Letter> letters;
    letters.reserve(d.child_word(v).size());
    for (Word::Letter a : d.child_word(v).letters())
      letters.push_back(static_cast<Word::Letter>(new_index[a]));
    words.push_back(Word(std::move(letters)));
  }
  return Fdag(std::move(words));
}
}  // namespace detail

// The subDAG rooted in v: v and all its descendants, re-indexed canonically.
inline Fdag subdag(const Fdag& d, int v) {
  assert(v >= 0 && v < d.vertex_count());
  std::vector<bool> keep(static_cast<std::size_t>(d.vertex_count()), false);
  std::vector<int> stack = {v};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (keep[static_cast<std::size_t>(u)]) continue;
    keep[static_cast<std::size_t>(u)] = true;
    for (Word::Letter a : d.child_word(u).letters()) stack.push_back(static_cast<int>(a));
  }
  std::vector<int> vertices;
  for (int u = 0; u < d.vertex_count(); ++u)
    if (keep[static_cast<std::size_t>(u)]) vertices.push_back(u);
  return detail::reindex_subset(d, vertices);
}

// ---------------------------------------------------------------------------
// Serialization.

// File format: "fdag 1", "n <count>", then "<index>: <word>" per vertex.
inline void write_fdag(std::ostream& out, const Fdag& d) {
  out << "fdag 1\n";
  out << "n " << d.vertex_count() << '\n';
  for (int v = 0; v < d.vertex_count(); ++v) {
    out << v << ':';
    if (!d.child_word(v).empty()) out << ' ' << d.child_word(v).to_text();
    out << '\n';
  }
}

// Reads the child words without semantic validation.
inline std::vector<Word> read_fdag_words(std::istream& in, std::string_view name = "<fdag>") {
  auto fail = [&](std::size_t line, const std::string& what) -> FormatError {
    return FormatError(std::string(name) + ":" + std::to_string(line) + ": " + what);
  };
  std::string line;
  if (!std::getline(in, line)) throw fail(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "fdag 1") throw fail(1, "expected \"fdag 1\"");
  if (!std::getline(in, line)) throw fail(2, "missing vertex count");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  long count = -1;
  {
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag >> count) || tag != "n" || count < 1)
      throw fail(2, "expected \"n <vertex count>\"");
  }
  std::vector<Word> words;
  for (long v = 0; v < count; ++v) {
    if (!std::getline(in, line)) throw fail(3 + static_cast<std::size_t>(v), "missing vertex line");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw fail(3 + static_cast<std::size_t>(v), "expected \"<index>: <word>\"");
    if (line.substr(0, colon) != std::to_string(v))
      throw fail(3 + static_cast<std::size_t>(v),
                 "expected vertex index " + std::to_string(v));
    try {
      words.push_back(Word::from_text(line.substr(colon + 1)));
    } catch (const std::invalid_argument& e) {
      throw fail(3 + static_cast<std::size_t>(v), e.what());
    }
  }
  return words;
}

// Reads and validates; used by every consumer that needs a real FDAG.
inline Fdag read_fdag(std::istream& in, std::string_view name = "<fdag>") {
  std::vector<Word> words = read_fdag_words(in, name);
  Validation v = validate(words);
  if (!v.ok()) throw FormatError(std::string(name) + ": " + v.message);
  return Fdag(std::move(words));
}

// One-line form "<word>;<word>;..." in canonical vertex order.
inline std::string canonical_line(const Fdag& d) {
  std::string out;
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (v) out.push_back(';');
    out += d.child_word(v).to_text();
  }
  return out;
}

inline Fdag fdag_from_canonical_line(std::string_view line) {
  std::vector<Word> words;
  std::size_t pos = 0;
  while (true) {
    std::size_t semi = line.find(';', pos);
    std::string_view piece = line.substr(pos, semi == std::string_view::npos ? semi : semi - pos);
    words.push_back(Word::from_text(piece));
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return Fdag(std::move(words));
}

}  // namespace fdag
