// Unordered rooted trees: balanced-parenthesis parsing, structural measures,
// canonical signatures and isomorphism.
#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdag {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TreeParseError : std::runtime_error {
  TreeParseError(const std::string& what, std::size_t byte)
      : std::runtime_error(what), offset(byte) {}
  std::size_t offset;
};

// Vertices live in an arena where every parent precedes its children, so a
// descending index scan is a valid bottom-up traversal.
class Tree {
 public:
  // Grammar: tree := "(" tree* ")", ASCII, whitespace ignored.
  static Tree parse(std::string_view text) {
    Tree t;
    std::vector<int> open;
    bool seen_root = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
      if (c == '(') {
        if (open.empty() && seen_root)
          throw TreeParseError("more than one tree on the line", i);
        int v = static_cast<int>(t.children_.size());
        t.children_.emplace_back();
        if (!open.empty()) t.children_[static_cast<std::size_t>(open.back())].push_back(v);
        open.push_back(v);
        seen_root = true;
      } else if (c == ')') {
        if (open.empty()) throw TreeParseError("unmatched ')'", i);
        open.pop_back();
      } else {
        throw TreeParseError("unexpected character", i);
      }
    }
    if (!seen_root) throw TreeParseError("empty tree text", text.size());
    if (!open.empty()) throw TreeParseError("unclosed '('", text.size());
    return t;
  }

  int vertex_count() const { return static_cast<int>(children_.size()); }
  int root() const { return 0; }
  const std::vector<int>& children(int v) const {
    return children_[static_cast<std::size_t>(v)];
  }

 private:
  std::vector<std::vector<int>> children_;
};

using Forest = std::vector<Tree>;

inline std::vector<int> vertex_heights(const Tree& t) {
  std::vector<int> h(static_cast<std::size_t>(t.vertex_count()), 0);
  for (int v = t.vertex_count() - 1; v >= 0; --v)
    for (int c : t.children(v))
      h[static_cast<std::size_t>(v)] =
          std::max(h[static_cast<std::size_t>(v)], h[static_cast<std::size_t>(c)] + 1);
  return h;
}

inline int height(const Tree& t) { return vertex_heights(t)[0]; }

inline int outdegree(const Tree& t) {
  std::size_t d = 0;
  for (int v = 0; v < t.vertex_count(); ++v) d = std::max(d, t.children(v).size());
  return static_cast<int>(d);
}

// Canonical per-vertex signature: "(" + sorted child signatures + ")".
// Equal signatures characterize isomorphic subtrees.
inline std::vector<std::string> vertex_signatures(const Tree& t) {
  std::vector<std::string> sig(static_cast<std::size_t>(t.vertex_count()));
  for (int v = t.vertex_count() - 1; v >= 0; --v) {
    std::vector<std::string> parts;
    parts.reserve(t.children(v).size());
    for (int c : t.children(v)) parts.push_back(sig[static_cast<std::size_t>(c)]);
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto& p : parts) s += p;
    s.push_back(')');
    sig[static_cast<std::size_t>(v)] = std::move(s);
  }
  return sig;
}

inline std::string signature(const Tree& t) { return vertex_signatures(t)[0]; }

inline std::set<std::string> distinct_subtrees(const Tree& t) {
  auto sigs = vertex_signatures(t);
  return std::set<std::string>(sigs.begin(), sigs.end());
}

inline bool isomorphic(const Tree& a, const Tree& b) { return signature(a) == signature(b); }

// Forest files: one tree per line; blank lines and lines starting with '#'
// are skipped.
inline Forest read_forest(std::istream& in, std::string_view name = "<forest>") {
  Forest forest;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      forest.push_back(Tree::parse(line));
    } catch (const TreeParseError& e) {
      throw FormatError(std::string(name) + ":" + std::to_string(lineno) + ": " + e.what() +
                        " (byte " + std::to_string(e.offset) + ")");
    }
  }
  return forest;
}

inline void write_forest(std::ostream& out, const Forest& forest) {
  for (const Tree& t : forest) out << signature(t) << '\n';
}

}  // namespace fdag
