#include "fdag/trees.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <map>
#include <sstream>
#include <vector>

using fdag::Tree;

namespace {

// Independent isomorphism oracle: root-preserving bijection search over all
// child matchings, no canonical forms involved.
bool iso_oracle(const Tree& a, int va, const Tree& b, int vb) {
  const auto& ca = a.children(va);
  const auto& cb = b.children(vb);
  if (ca.size() != cb.size()) return false;
  std::vector<bool> used(cb.size(), false);
  std::function<bool(std::size_t)> match = [&](std::size_t i) {
    if (i == ca.size()) return true;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      if (used[j] || !iso_oracle(a, ca[i], b, cb[j])) continue;
      used[j] = true;
      if (match(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return match(0);
}

bool iso_oracle(const Tree& a, const Tree& b) { return iso_oracle(a, 0, b, 0); }

// All ordered parenthesis encodings with exactly n vertices.
std::vector<std::string> ordered_tree_texts(int n) {
  static std::map<int, std::vector<std::string>> tree_memo;
  static std::map<int, std::vector<std::string>> forest_memo;
  std::function<std::vector<std::string>(int)> forests = [&](int m) -> std::vector<std::string> {
    if (m == 0) return {""};
    if (auto it = forest_memo.find(m); it != forest_memo.end()) return it->second;
    std::vector<std::string> out;
    for (int s = 1; s <= m; ++s)
      for (const auto& t : ordered_tree_texts(s))
        for (const auto& rest : forests(m - s)) out.push_back(t + rest);
    forest_memo[m] = out;
    return out;
  };
  if (auto it = tree_memo.find(n); it != tree_memo.end()) return it->second;
  std::vector<std::string> out;
  for (const auto& f : forests(n - 1)) out.push_back("(" + f + ")");
  tree_memo[n] = out;
  return out;
}

}  // namespace

TEST_CASE("parsing the worked shapes", "[trees]") {
  Tree leaf = Tree::parse("()");
  CHECK(leaf.vertex_count() == 1);
  CHECK(fdag::height(leaf) == 0);
  CHECK(fdag::outdegree(leaf) == 0);

  // Root with a 2-vertex chain child and a 2-leaf child.
  Tree t = Tree::parse("((())(()()))");
  CHECK(t.vertex_count() == 6);
  CHECK(fdag::height(t) == 2);
  CHECK(fdag::outdegree(t) == 2);

  CHECK(fdag::isomorphic(Tree::parse("(()())"), Tree::parse("(() ())")));
}

TEST_CASE("parse errors carry byte offsets", "[trees]") {
  auto offset_of = [](std::string_view text) {
    try {
      Tree::parse(text);
    } catch (const fdag::TreeParseError& e) {
      return e.offset;
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(offset_of("") == 0);
  CHECK(offset_of("   ") == 3);
  CHECK(offset_of("(()") == 3);
  CHECK(offset_of("())") == 2);
  CHECK(offset_of("()()") == 2);
  CHECK(offset_of("(x)") == 1);
}

TEST_CASE("height and outdegree of the guideline forest", "[trees]") {
  Tree t1 = Tree::parse("((()))");
  CHECK(fdag::height(t1) == 2);
  CHECK(fdag::outdegree(t1) == 1);

  Tree t3 = Tree::parse("(()()())");
  CHECK(fdag::height(t3) == 1);
  CHECK(fdag::outdegree(t3) == 3);
}

TEST_CASE("distinct subtrees", "[trees]") {
  CHECK(fdag::distinct_subtrees(Tree::parse("()")).size() == 1);
  // leaf, 2-chain, 2-leaf star, and the root shape
  CHECK(fdag::distinct_subtrees(Tree::parse("((())(())(()()))")).size() == 4);
  std::string chain = "()";
  for (int n = 1; n <= 6; ++n) {
    Tree t = Tree::parse(chain);
    CHECK(t.vertex_count() == n);
    CHECK(fdag::distinct_subtrees(t).size() == static_cast<std::size_t>(n));
    chain = "(" + chain + ")";
  }
}

TEST_CASE("isomorphism basics", "[trees]") {
  Tree t2 = Tree::parse("((())(())(()()))");
  CHECK(fdag::isomorphic(t2, t2));
  CHECK_FALSE(fdag::isomorphic(Tree::parse("(()())"), Tree::parse("((()))")));
  CHECK(fdag::isomorphic(t2, Tree::parse("((()())(())(()))")));
}

TEST_CASE("signature equality matches the oracle on all small trees", "[trees]") {
  std::vector<Tree> trees;
  for (int n = 1; n <= 6; ++n)
    for (const auto& text : ordered_tree_texts(n)) trees.push_back(Tree::parse(text));
  REQUIRE(trees.size() == 1 + 1 + 2 + 5 + 14 + 42);

  for (const Tree& a : trees)
    for (const Tree& b : trees) {
      bool by_signature = fdag::signature(a) == fdag::signature(b);
      CHECK(by_signature == iso_oracle(a, b));
      if (by_signature) {
        CHECK(fdag::height(a) == fdag::height(b));
        CHECK(fdag::outdegree(a) == fdag::outdegree(b));
      }
    }

  for (const Tree& t : trees)
    CHECK(fdag::distinct_subtrees(t).size() <= static_cast<std::size_t>(t.vertex_count()));
}

TEST_CASE("forest files", "[trees]") {
  std::istringstream in(
      "# guideline forest\n"
      "((()))\n"
      "\n"
      "((())(())(()()))\n"
      "(()()())\n");
  fdag::Forest f = fdag::read_forest(in, "fig.forest");
  REQUIRE(f.size() == 3);
  CHECK(f[0].vertex_count() == 3);
  CHECK(f[1].vertex_count() == 8);
  CHECK(f[2].vertex_count() == 4);

  std::ostringstream out;
  fdag::write_forest(out, f);
  std::istringstream again(out.str());
  fdag::Forest g = fdag::read_forest(again);
  REQUIRE(g.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(fdag::isomorphic(f[i], g[i]));

  std::istringstream bad("(()\n");
  CHECK_THROWS_WITH(fdag::read_forest(bad, "x.forest"),
                    Catch::Matchers::ContainsSubstring("x.forest:1"));
}
