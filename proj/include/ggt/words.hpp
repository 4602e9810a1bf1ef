#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ggt/errors.hpp"

namespace ggt {

// A generator letter. Letters are packed as code = 2*index + inverse_flag,
// so the inverse of a letter is code ^ 1 and the code order a < A < b < B < ...
// is the shortlex letter order used everywhere.
struct Gen {
  unsigned index{0};
  bool inverse{false};
};

using Letter = std::uint8_t;

inline Letter letter_code(Gen g) { return static_cast<Letter>(2 * g.index + (g.inverse ? 1 : 0)); }
inline Gen letter_gen(Letter l) { return Gen{static_cast<unsigned>(l >> 1), (l & 1) != 0}; }
inline Letter inverse_letter(Letter l) { return static_cast<Letter>(l ^ 1); }

inline char letter_char(Letter l) {
  Gen g = letter_gen(l);
  return static_cast<char>((g.inverse ? 'A' : 'a') + g.index);
}

// Sequence of letters. Invariants (free reduction, normal form) are supplied
// by the operations below and by group models, not enforced on construction.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  // Parses the lowercase/uppercase convention, e.g. "abAB".
  static Word parse(std::string_view text, unsigned rank) {
    std::vector<Letter> ls;
    ls.reserve(text.size());
    for (char c : text) {
      unsigned idx;
      bool inv;
      if (c >= 'a' && c <= 'z') {
        idx = static_cast<unsigned>(c - 'a');
        inv = false;
      } else if (c >= 'A' && c <= 'Z') {
        idx = static_cast<unsigned>(c - 'A');
        inv = true;
      } else {
        fail(ErrorCode::usage, std::string("bad letter '") + c + "' in word");
      }
      if (idx >= rank) fail(ErrorCode::usage, std::string("letter '") + c + "' outside alphabet of rank " + std::to_string(rank));
      ls.push_back(letter_code(Gen{idx, inv}));
    }
    return Word(std::move(ls));
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::vector<Letter>& letters() { return letters_; }
  void push(Letter l) { letters_.push_back(l); }

  std::string str() const {
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(letter_char(l));
    return s;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Stack-based free reduction; idempotent.
inline Word free_reduce(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter l : w.letters()) {
    if (!out.empty() && out.back() == inverse_letter(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

inline Word inverse_word(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(inverse_letter(*it));
  return Word(std::move(out));
}

// Concatenation without reduction.
inline Word concat(const Word& a, const Word& b) {
  std::vector<Letter> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.letters().begin(), a.letters().end());
  out.insert(out.end(), b.letters().begin(), b.letters().end());
  return Word(std::move(out));
}

// Concatenation of two freely reduced words with cancellation at the seam.
inline Word reduced_concat(const Word& a, const Word& b) {
  std::vector<Letter> out(a.letters());
  for (Letter l : b.letters()) {
    if (!out.empty() && out.back() == inverse_letter(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

// (core, conjugator) with w = conjugator * core * conjugator^-1 in the free
// group and core cyclically reduced. Expects w freely reduced.
inline std::pair<Word, Word> cyclic_reduce(const Word& w) {
  std::size_t lo = 0, hi = w.size();
  std::vector<Letter> conj;
  while (hi - lo >= 2 && w[lo] == inverse_letter(w[hi - 1])) {
    conj.push_back(w[lo]);
    ++lo;
    --hi;
  }
  std::vector<Letter> core(w.letters().begin() + static_cast<long>(lo), w.letters().begin() + static_cast<long>(hi));
  return {Word(std::move(core)), Word(std::move(conj))};
}

// w^k reduced, for freely reduced w.
inline Word word_pow(const Word& w, long long k) {
  if (k == 0 || w.empty()) return Word();
  Word base = k > 0 ? w : inverse_word(w);
  long long n = k > 0 ? k : -k;
  auto [core, conj] = cyclic_reduce(base);
  // conj core^n conj^-1 is already reduced since core is cyclically reduced.
  std::vector<Letter> out(conj.letters());
  out.reserve(conj.size() * 2 + core.size() * static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) out.insert(out.end(), core.letters().begin(), core.letters().end());
  for (auto it = conj.letters().rbegin(); it != conj.letters().rend(); ++it) out.push_back(inverse_letter(*it));
  return Word(std::move(out));
}

inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters() < b.letters();
}

}  // namespace ggt
