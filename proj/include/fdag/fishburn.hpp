// Row-Fishburn matrices and their constructive bijection with FDAGs:
// reduced and incremental adjacency matrices, the row difference/sum
// calculus, direct matrix enumeration and the asymptotic growth estimate.
#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fdag/dag.hpp"

namespace fdag {

// Upper-triangular nonnegative integer matrix; valid (row-Fishburn) when
// every row has a nonzero entry. Orientation follows the adjacency reading:
// for a FDAG (v_0..v_n), row r stands for vertex v_{n-r} and column c for
// vertex v_{n-1-c}, so entries are allowed at r <= c. Size is the entry sum.
class RowFishburnMatrix {
 public:
  RowFishburnMatrix() = default;
  explicit RowFishburnMatrix(std::size_t dim) : dim_(dim), cells_(dim * dim, 0) {}

  std::size_t dim() const { return dim_; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return cells_[r * dim_ + c]; }
  std::uint64_t& at(std::size_t r, std::size_t c) { return cells_[r * dim_ + c]; }

  std::uint64_t size() const {
    std::uint64_t total = 0;
    for (std::uint64_t x : cells_) total += x;
    return total;
  }

  std::vector<std::uint64_t> row(std::size_t r) const {
    return std::vector<std::uint64_t>(cells_.begin() + static_cast<std::ptrdiff_t>(r * dim_),
                                      cells_.begin() + static_cast<std::ptrdiff_t>((r + 1) * dim_));
  }

  void set_row(std::size_t r, const std::vector<std::uint64_t>& values) {
    assert(values.size() == dim_);
    std::copy(values.begin(), values.end(), cells_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
  }

  // Empty reason when the matrix is row-Fishburn.
  std::string why_not_row_fishburn() const {
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < r; ++c)
        if (at(r, c) != 0)
          return "nonzero entry below the diagonal at row " + std::to_string(r) + ", column " +
                 std::to_string(c);
    for (std::size_t r = 0; r < dim_; ++r) {
      bool nonzero = false;
      for (std::size_t c = r; c < dim_; ++c) nonzero |= at(r, c) != 0;
      if (!nonzero) return "row " + std::to_string(r) + " is entirely zero";
    }
    return {};
  }

  friend bool operator==(const RowFishburnMatrix&, const RowFishburnMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> cells_;
};

using MatrixRow = std::vector<std::uint64_t>;

// Row difference: zero prefix, the difference at the first differing index,
// then the left row's suffix. Defined along the adjacency pipeline where the
// left row dominates at the first difference.
inline MatrixRow ominus(const MatrixRow& a, const MatrixRow& b) {
  assert(a.size() == b.size());
  std::size_t j = 0;
  while (j < a.size() && a[j] == b[j]) ++j;
  if (j == a.size()) throw std::invalid_argument("row difference of equal rows is undefined");
  if (a[j] < b[j])
    throw std::invalid_argument("row difference needs the left row to dominate at index " +
                                std::to_string(j));
  MatrixRow out(a.size(), 0);
  out[j] = a[j] - b[j];
  std::copy(a.begin() + static_cast<std::ptrdiff_t>(j) + 1, a.end(),
            out.begin() + static_cast<std::ptrdiff_t>(j) + 1);
  return out;
}

// Row sum: the left row's prefix, the sum at the right row's first nonzero
// index, then the right row's suffix. Inverse of the row difference.
inline MatrixRow oplus(const MatrixRow& a, const MatrixRow& b) {
  assert(a.size() == b.size());
  std::size_t j = 0;
  while (j < b.size() && b[j] == 0) ++j;
  if (j == b.size()) throw std::invalid_argument("row sum needs a nonzero right row");
  MatrixRow out(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(j));
  out.push_back(a[j] + b[j]);
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j) + 1, b.end());
  return out;
}

// Reduced adjacency matrix: multiplicities of v_{n-1-c} in the children of
// v_{n-r}; the leaf column and the top vertex row are dropped.
inline RowFishburnMatrix reduced_adjacency(const Fdag& d) {
  const std::size_t n = static_cast<std::size_t>(d.vertex_count()) - 1;
  RowFishburnMatrix m(n);
  for (std::size_t i = 1; i <= n; ++i)
    for (Word::Letter a : d.child_word(static_cast<int>(i)).letters())
      ++m.at(n - i, n - 1 - a);
  return m;
}

// The incremental adjacency matrix: each vertex row minus its predecessor's.
// Its size equals the number of expansion steps that build d.
inline RowFishburnMatrix to_matrix(const Fdag& d) {
  const std::size_t n = static_cast<std::size_t>(d.vertex_count()) - 1;
  RowFishburnMatrix reduced = reduced_adjacency(d);
  RowFishburnMatrix inc(n);
  if (n == 0) return inc;
  inc.set_row(n - 1, reduced.row(n - 1));
  for (std::size_t i = 1; i < n; ++i)
    inc.set_row(n - i - 1, ominus(reduced.row(n - i - 1), reduced.row(n - i)));
  return inc;
}

// Inverse map: accumulate rows bottom-up, then read child words off the
// recovered adjacency rows.
inline Fdag from_matrix(const RowFishburnMatrix& m) {
  if (std::string reason = m.why_not_row_fishburn(); !reason.empty())
    throw std::invalid_argument("not a row-Fishburn matrix: " + reason);
  const std::size_t n = m.dim();
  RowFishburnMatrix reduced(n);
  if (n > 0) {
    reduced.set_row(n - 1, m.row(n - 1));
    for (std::size_t i = 1; i < n; ++i)
      reduced.set_row(n - i - 1, oplus(reduced.row(n - i), m.row(n - i - 1)));
  }
  std::vector<Word> words(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Word::Letter> letters;
    for (std::size_t c = 0; c < n; ++c)
      for (std::uint64_t rep = 0; rep < reduced.at(n - i, c); ++rep)
        letters.push_back(static_cast<Word::Letter>(n - 1 - c));
    words[i] = Word(std::move(letters));
  }
  return Fdag(std::move(words));
}

// A forest compresses to a single tree exactly when the matrix also has a
// nonzero entry in every column.
inline bool is_general_fishburn(const RowFishburnMatrix& m) {
  if (!m.why_not_row_fishburn().empty()) return false;
  for (std::size_t c = 0; c < m.dim(); ++c) {
    bool nonzero = false;
    for (std::size_t r = 0; r <= c; ++r) nonzero |= m.at(r, c) != 0;
    if (!nonzero) return false;
  }
  return true;
}

inline bool single_tree_check(const Fdag& d) { return d.sources().size() == 1; }

// Direct enumeration of all row-Fishburn matrices of size <= max_size, each
// exactly once, starting from the empty matrix. Two expansion moves:
// increment a top-row entry at or beyond its rightmost nonzero column, or
// grow the dimension by one (new top row and left column) placing a single 1
// in the new top row. The inverse decrements the top row's rightmost nonzero
// entry, dropping the dimension when the row empties, so parents are unique.
inline void enumerate_matrices(std::uint64_t max_size,
                               const std::function<bool(const RowFishburnMatrix&)>& visit) {
  struct Rec {
    std::uint64_t max;
    const std::function<bool(const RowFishburnMatrix&)>& visit;
    bool stopped = false;

    void run(RowFishburnMatrix& m, std::uint64_t size) {
      if (stopped) return;
      if (!visit(m)) {
        stopped = true;
        return;
      }
      if (size == max) return;
      const std::size_t dim = m.dim();
      if (dim > 0) {
        std::size_t rightmost = dim;
        for (std::size_t c = dim; c-- > 0;)
          if (m.at(0, c) != 0) {
            rightmost = c;
            break;
          }
        for (std::size_t c = rightmost; c < dim; ++c) {
          ++m.at(0, c);
          run(m, size + 1);
          if (stopped) return;
          --m.at(0, c);
        }
      }
      RowFishburnMatrix grown(dim + 1);
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = r; c < dim; ++c) grown.at(r + 1, c + 1) = m.at(r, c);
      for (std::size_t c = 0; c <= dim; ++c) {
        grown.at(0, c) = 1;
        run(grown, size + 1);
        if (stopped) return;
        grown.at(0, c) = 0;
      }
    }
  };
  RowFishburnMatrix empty;
  Rec rec{max_size, visit};
  rec.run(empty, 0);
}

// Matrices per size 0..max_size; the independent cross-check for the
// level counts of the FDAG enumeration.
inline std::vector<std::uint64_t> matrix_counts(std::uint64_t max_size) {
  std::vector<std::uint64_t> counts(max_size + 1, 0);
  enumerate_matrices(max_size, [&](const RowFishburnMatrix& m) {
    ++counts[m.size()];
    return true;
  });
  return counts;
}

inline constexpr double kGrowthBeta = 1.29706861206;

// Leading-order growth estimate k! (12/pi^2)^k beta; sanity ratios only.
inline double asymptotic_estimate(int k) {
  assert(k >= 1);
  double value = kGrowthBeta;
  const double base = 12.0 / (std::numbers::pi * std::numbers::pi);
  for (int i = 1; i <= k; ++i) value *= static_cast<double>(i) * base;
  return value;
}

// Text format: "rfm 1", "dim <d>", then d rows of d integers.
inline void write_matrix(std::ostream& out, const RowFishburnMatrix& m) {
  out << "rfm 1\n";
  out << "dim " << m.dim() << '\n';
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      if (c) out << ' ';
      out << m.at(r, c);
    }
    out << '\n';
  }
}

inline RowFishburnMatrix read_matrix(std::istream& in, std::string_view name = "<matrix>") {
  auto fail = [&](std::size_t line, const std::string& what) -> FormatError {
    return FormatError(std::string(name) + ":" + std::to_string(line) + ": " + what);
  };
  std::string line;
  if (!std::getline(in, line)) throw fail(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "rfm 1") throw fail(1, "expected \"rfm 1\"");
  if (!std::getline(in, line)) throw fail(2, "missing dimension");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  long dim = -1;
  {
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag >> dim) || tag != "dim" || dim < 0) throw fail(2, "expected \"dim <d>\"");
  }
  RowFishburnMatrix m(static_cast<std::size_t>(dim));
  for (long r = 0; r < dim; ++r) {
    if (!std::getline(in, line)) throw fail(3 + static_cast<std::size_t>(r), "missing matrix row");
    std::istringstream ss(line);
    for (long c = 0; c < dim; ++c) {
      std::int64_t value;
      if (!(ss >> value) || value < 0)
        throw fail(3 + static_cast<std::size_t>(r), "expected " + std::to_string(dim) +
                                                        " nonnegative integers");
      m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
          static_cast<std::uint64_t>(value);
    }
    std::string rest;
    if (ss >> rest) throw fail(3 + static_cast<std::size_t>(r), "trailing content on matrix row");
  }
  return m;
}

}  // namespace fdag
