#include "fdag/fishburn.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fdag/enumerate.hpp"

using fdag::Fdag;
using fdag::MatrixRow;
using fdag::RowFishburnMatrix;
using fdag::Word;

namespace {

Word W(std::vector<Word::Letter> letters) { return Word(std::move(letters)); }

Fdag guideline_fdag() {
  return Fdag({Word(), W({0}), W({0, 0}), W({0, 0, 0}), W({1}), W({2, 1, 1})});
}

RowFishburnMatrix from_rows(const std::vector<MatrixRow>& rows) {
  RowFishburnMatrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

RowFishburnMatrix guideline_incremental() {
  return from_rows({{0, 0, 1, 2, 0},
                    {0, 0, 0, 1, 0},
                    {0, 0, 0, 0, 1},
                    {0, 0, 0, 0, 1},
                    {0, 0, 0, 0, 1}});
}

std::string matrix_key(const RowFishburnMatrix& m) {
  std::ostringstream out;
  fdag::write_matrix(out, m);
  return out.str();
}

}  // namespace

TEST_CASE("incremental matrix of the small cases", "[fishburn]") {
  RowFishburnMatrix empty = fdag::to_matrix(Fdag());
  CHECK(empty.dim() == 0);
  CHECK(empty.size() == 0);

  RowFishburnMatrix path = fdag::to_matrix(Fdag({Word(), W({0})}));
  REQUIRE(path.dim() == 1);
  CHECK(path.at(0, 0) == 1);
  CHECK(path.size() == 1);
}

TEST_CASE("guideline FDAG maps to the worked matrix", "[fishburn]") {
  RowFishburnMatrix reduced = fdag::reduced_adjacency(guideline_fdag());
  CHECK(reduced == from_rows({{0, 0, 1, 2, 0},
                              {0, 0, 0, 1, 0},
                              {0, 0, 0, 0, 3},
                              {0, 0, 0, 0, 2},
                              {0, 0, 0, 0, 1}}));

  RowFishburnMatrix inc = fdag::to_matrix(guideline_fdag());
  CHECK(inc == guideline_incremental());
  CHECK(inc.size() == 7);
  CHECK(fdag::from_matrix(inc) == guideline_fdag());
}

TEST_CASE("row difference and row sum", "[fishburn]") {
  CHECK(fdag::ominus({0, 0, 0, 0, 3}, {0, 0, 0, 0, 2}) == MatrixRow{0, 0, 0, 0, 1});
  CHECK(fdag::ominus({0, 0, 1, 2, 0}, {0, 0, 0, 1, 0}) == MatrixRow{0, 0, 1, 2, 0});
  CHECK_THROWS_AS(fdag::ominus({1, 2}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(fdag::ominus({0, 1}, {1, 0}), std::invalid_argument);
  CHECK(fdag::oplus({0, 0, 0, 1, 0}, {0, 0, 1, 2, 0}) == MatrixRow{0, 0, 1, 2, 0});
  CHECK_THROWS_AS(fdag::oplus({1, 0}, {0, 0}), std::invalid_argument);

  // inverse law along real adjacency pipelines
  fdag::reverse_search(Fdag(), [](const Fdag&, int steps) { return steps <= 5; },
                       [&](const Fdag& d, int) {
                         if (d.vertex_count() < 3) return true;
                         RowFishburnMatrix reduced = fdag::reduced_adjacency(d);
                         for (std::size_t r = 0; r + 1 < reduced.dim(); ++r) {
                           MatrixRow upper = reduced.row(r);
                           MatrixRow lower = reduced.row(r + 1);
                           CHECK(fdag::oplus(lower, fdag::ominus(upper, lower)) == upper);
                         }
                         return true;
                       });
}

TEST_CASE("matrix and FDAG round trips are exact", "[fishburn]") {
  fdag::reverse_search(Fdag(), [](const Fdag&, int steps) { return steps <= 5; },
                       [&](const Fdag& d, int steps) {
                         RowFishburnMatrix m = fdag::to_matrix(d);
                         CHECK(m.why_not_row_fishburn().empty());
                         CHECK(m.size() == static_cast<std::uint64_t>(steps));
                         CHECK(fdag::from_matrix(m) == d);
                         return true;
                       });

  fdag::enumerate_matrices(4, [&](const RowFishburnMatrix& m) {
    CHECK(fdag::to_matrix(fdag::from_matrix(m)) == m);
    return true;
  });
}

TEST_CASE("from_matrix rejects malformed input", "[fishburn]") {
  RowFishburnMatrix zero_row(2);
  zero_row.at(0, 1) = 1;
  CHECK_THROWS_WITH(fdag::from_matrix(zero_row),
                    Catch::Matchers::ContainsSubstring("row 1 is entirely zero"));

  RowFishburnMatrix lower(2);
  lower.at(0, 0) = 1;
  lower.at(1, 0) = 1;
  lower.at(1, 1) = 1;
  CHECK_THROWS_WITH(fdag::from_matrix(lower),
                    Catch::Matchers::ContainsSubstring("below the diagonal"));
}

TEST_CASE("direct matrix enumeration matches the level counts", "[fishburn]") {
  CHECK(fdag::matrix_counts(6) ==
        std::vector<std::uint64_t>{1, 1, 3, 12, 61, 380, 2815});

  // each matrix exactly once, all row-Fishburn
  std::set<std::string> seen;
  std::uint64_t total = 0;
  fdag::enumerate_matrices(5, [&](const RowFishburnMatrix& m) {
    CHECK(m.why_not_row_fishburn().empty());
    CHECK(seen.insert(matrix_key(m)).second);
    ++total;
    return true;
  });
  CHECK(total == 1 + 1 + 3 + 12 + 61 + 380);
}

TEST_CASE("single-tree detection through columns", "[fishburn]") {
  CHECK_FALSE(fdag::is_general_fishburn(guideline_incremental()));
  RowFishburnMatrix one(1);
  one.at(0, 0) = 1;
  CHECK(fdag::is_general_fishburn(one));
  CHECK(fdag::single_tree_check(Fdag({Word(), W({0})})));
  CHECK_FALSE(fdag::single_tree_check(guideline_fdag()));

  fdag::enumerate_matrices(5, [&](const RowFishburnMatrix& m) {
    CHECK(fdag::is_general_fishburn(m) == fdag::single_tree_check(fdag::from_matrix(m)));
    return true;
  });
}

TEST_CASE("asymptotic growth estimate", "[fishburn]") {
  // ratio of the true count to the leading term without the constant
  const double base = 12.0 / (std::numbers::pi * std::numbers::pi);
  double leading = 1.0;
  for (int i = 1; i <= 8; ++i) leading *= i * base;
  CHECK_THAT(237348.0 / leading, Catch::Matchers::WithinAbs(1.232, 0.002));
  CHECK_THAT(fdag::asymptotic_estimate(8), Catch::Matchers::WithinRel(leading * 1.29706861206, 1e-9));
}

TEST_CASE("matrix text format", "[fishburn]") {
  std::ostringstream out;
  fdag::write_matrix(out, guideline_incremental());
  CHECK(out.str() ==
        "rfm 1\n"
        "dim 5\n"
        "0 0 1 2 0\n"
        "0 0 0 1 0\n"
        "0 0 0 0 1\n"
        "0 0 0 0 1\n"
        "0 0 0 0 1\n");
  std::istringstream in(out.str());
  CHECK(fdag::read_matrix(in) == guideline_incremental());

  // degenerate dimension round trips too
  std::ostringstream empty_out;
  fdag::write_matrix(empty_out, fdag::to_matrix(Fdag()));
  CHECK(empty_out.str() == "rfm 1\ndim 0\n");
  std::istringstream empty_in(empty_out.str());
  CHECK(fdag::from_matrix(fdag::read_matrix(empty_in)) == Fdag());

  auto expect_fail = [](std::string_view text, std::string_view needle) {
    std::istringstream bad{std::string(text)};
    CHECK_THROWS_WITH(fdag::read_matrix(bad, "m.rfm"),
                      Catch::Matchers::ContainsSubstring(std::string(needle)));
  };
  expect_fail("", "m.rfm:1");
  expect_fail("rfm 1\ndim -1\n", "m.rfm:2");
  expect_fail("rfm 1\ndim 1\n", "m.rfm:3");
  expect_fail("rfm 1\ndim 1\n1 2\n", "trailing content");
}
