// Decreasing words over integer alphabets {0..n}: the encoding used for
// child multisets throughout the library. Provides lexicographic comparison,
// the suffix-cut operator and construction of minimal bounded words.
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdag {

// A non-increasing sequence of letters. The empty word is allowed and
// compares less than every nonempty word.
class Word {
 public:
  using Letter = std::uint32_t;

  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
    if (!std::is_sorted(letters_.rbegin(), letters_.rend()))
      throw std::invalid_argument("word is not decreasing");
  }

  static Word single(Letter a) { return Word(std::vector<Letter>{a}); }

  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  // Appends a letter; keeps the word decreasing.
  void append(Letter a) {
    if (!letters_.empty() && a > letters_.back())
      throw std::invalid_argument("appended letter breaks decrease");
    letters_.push_back(a);
  }

  void pop_back() { letters_.pop_back(); }

  // vector<> compares lexicographically with the shorter prefix smaller,
  // which is exactly the word order used here; the empty word is least.
  friend auto operator<=>(const Word&, const Word&) = default;

  // Text form: decimal letters separated by single spaces; empty word is "".
  std::string to_text() const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out.push_back(' ');
      out += std::to_string(letters_[i]);
    }
    return out;
  }

  static Word from_text(std::string_view text) {
    std::vector<Letter> letters;
    std::size_t i = 0;
    while (i < text.size()) {
      if (text[i] == ' ' || text[i] == '\t') {
        ++i;
        continue;
      }
      if (text[i] < '0' || text[i] > '9')
        throw std::invalid_argument("invalid character in word");
      std::uint64_t value = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        value = value * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (value > 0xffffffffull) throw std::invalid_argument("letter out of range");
        ++i;
      }
      letters.push_back(static_cast<Letter>(value));
    }
    return Word(std::move(letters));
  }

 private:
  std::vector<Letter> letters_;
};

inline std::strong_ordering lex_compare(const Word& a, const Word& b) {
  return a <=> b;
}

// Removes the last letter; the empty word maps to itself.
inline Word suffix_cut(const Word& w) {
  if (w.empty()) return Word();
  std::vector<Word::Letter> letters(w.letters().begin(), w.letters().end() - 1);
  return Word(std::move(letters));
}

// w is minimal for the language bounded by `bound` iff w lies strictly above
// the bound but its suffix cut does not.
inline bool is_minimal(const Word& w, const Word& bound) {
  if (bound.empty()) throw std::invalid_argument("minimality bound must be nonempty");
  return w > bound && suffix_cut(w) <= bound;
}

// All minimal words above `bound` over the alphabet {0..n}, in construction
// order: single letters bound[0]+1..n ascending, then prefix extensions with
// the breaking position ascending and its letter ascending, then the
// one-letter extensions of `bound` itself with the extra letter ascending.
// Empty when the bound's first letter exceeds n; otherwise exactly n+1 words.
inline std::vector<Word> minimal_words(const Word& bound, Word::Letter n) {
  if (bound.empty()) throw std::invalid_argument("minimal_words: bound must be nonempty");
  const auto& a = bound.letters();
  std::vector<Word> out;
  if (a[0] > n) return out;
  for (Word::Letter i = a[0] + 1; i <= n && i != 0; ++i) out.push_back(Word::single(i));
  for (std::size_t k = 1; k < a.size(); ++k) {
    if (a[k] >= a[k - 1]) continue;
    for (Word::Letter i = a[k] + 1; i <= a[k - 1]; ++i) {
      std::vector<Word::Letter> letters(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k));
      letters.push_back(i);
      out.push_back(Word(std::move(letters)));
    }
  }
  for (Word::Letter i = 0; i <= a.back(); ++i) {
    std::vector<Word::Letter> letters = a;
    letters.push_back(i);
    out.push_back(Word(std::move(letters)));
    if (i == a.back()) break;  // letters are unsigned
  }
  return out;
}

}  // namespace fdag
