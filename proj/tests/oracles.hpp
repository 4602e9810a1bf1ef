#pragma once

// Independent oracles for the test suites. Everything here is implemented
// from scratch against the definitions, not through the library path it
// checks: counts by explicit enumeration or transfer matrices, normal forms
// by naive fixpoint rewriting, distances by free-group reduction.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ggt/exact.hpp"
#include "ggt/words.hpp"

namespace oracles {

// Ball sizes of the free group by explicit recursive enumeration of freely
// reduced words.
inline void count_reduced_words_rec(unsigned rank, unsigned depth_left, int last, std::uint64_t& count) {
  if (depth_left == 0) return;
  for (int l = 0; l < static_cast<int>(2 * rank); ++l) {
    if (last >= 0 && (last ^ 1) == l) continue;
    ++count;
    count_reduced_words_rec(rank, depth_left - 1, l, count);
  }
}

inline std::vector<std::uint64_t> free_ball_counts(unsigned rank, unsigned radius) {
  std::vector<std::uint64_t> balls;
  for (unsigned r = 0; r <= radius; ++r) {
    std::uint64_t count = 1;  // the empty word
    count_reduced_words_rec(rank, r, -1, count);
    balls.push_back(count);
  }
  return balls;
}

// Lattice points of the l1 ball in Z^2.
inline std::uint64_t z2_ball_count(long long radius) {
  std::uint64_t count = 0;
  for (long long x = -radius; x <= radius; ++x) {
    for (long long y = -radius; y <= radius; ++y) {
      if (std::llabs(x) + std::llabs(y) <= radius) ++count;
    }
  }
  return count;
}

// Ball sizes of Z2 * Z via a 3-state transfer matrix over the geodesic
// alphabet {a, b, B} with forbidden bigrams aa, bB, Bb.
inline std::vector<std::uint64_t> torsion_ball_counts(unsigned radius) {
  std::vector<std::uint64_t> balls{1};
  // state 0: last letter a; 1: last b; 2: last B.
  std::array<std::uint64_t, 3> cur{1, 1, 1};
  std::uint64_t total = 1 + 3;
  if (radius == 0) return balls;
  balls.push_back(total);
  for (unsigned k = 2; k <= radius; ++k) {
    std::array<std::uint64_t, 3> nxt{};
    nxt[0] = cur[1] + cur[2];
    nxt[1] = cur[0] + cur[1];
    nxt[2] = cur[0] + cur[2];
    total += nxt[0] + nxt[1] + nxt[2];
    balls.push_back(total);
    cur = nxt;
  }
  return balls;
}

// Naive fixpoint rewriting for Z2 * Z over letters a,A,b,B: aa -> e, A -> a,
// free cancellations of b.
inline std::string torsion_rewrite(std::string w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 'A') {
        w[i] = 'a';
        changed = true;
        break;
      }
      if (i + 1 < w.size()) {
        bool cancel = (w[i] == 'a' && w[i + 1] == 'a') || (w[i] == 'b' && w[i + 1] == 'B') ||
                      (w[i] == 'B' && w[i + 1] == 'b');
        if (cancel) {
          w.erase(i, 2);
          changed = true;
          break;
        }
      }
    }
  }
  return w;
}

// Exponent vector of a rank-2 abelian word.
inline std::pair<long long, long long> abelian_exponents(const ggt::Word& w) {
  long long x = 0, y = 0;
  for (ggt::Letter l : w.letters()) {
    ggt::Gen g = ggt::letter_gen(l);
    long long d = g.inverse ? -1 : 1;
    if (g.index == 0) x += d;
    else y += d;
  }
  return {x, y};
}

// Tree distance between vertices given as reduced words.
inline std::uint64_t tree_distance(const ggt::Word& u, const ggt::Word& v) {
  return ggt::reduced_concat(ggt::inverse_word(u), v).size();
}

// Exhaustive nearest-orbit-point scan for the cell index of beta(O), from
// first principles: orbit points are conj * core^j, indexed i = j+1 (j >= 0)
// and i = j (j < 0); ties resolve to the smallest line position.
inline long long voronoi_scan(const ggt::Word& xi, const ggt::Word& beta) {
  auto [core, conj] = ggt::cyclic_reduce(ggt::free_reduce(xi));
  ggt::Word v = ggt::reduced_concat(ggt::free_reduce(beta), conj);
  long long L = static_cast<long long>(core.size());
  long long range = static_cast<long long>(v.size()) / L + 2;
  long long best_i = 0;
  std::uint64_t best_d = UINT64_MAX;
  auto ord = [](long long i) { return i < 0 ? i : i - 1; };
  for (long long i = -range; i <= range; ++i) {
    if (i == 0) continue;
    long long j = i > 0 ? i - 1 : i;
    ggt::Word pt = ggt::reduced_concat(conj, ggt::word_pow(core, j));
    std::uint64_t d = tree_distance(pt, v);
    if (d < best_d || (d == best_d && ord(i) < ord(best_i))) {
      best_d = d;
      best_i = i;
    }
  }
  return best_i;
}

// Brute-force count of reduced free-product words of lambda-norm <= cap:
// tuples over the given (norm, multiplicity) block spectrum with nontrivial
// interior blocks. Blocks are abstract: only the norms matter.
inline ggt::BigInt free_product_brute_count(const std::vector<ggt::BigInt>& spheres, const ggt::BigRat& lambda,
                                            const ggt::BigRat& cap) {
  using ggt::BigInt;
  using ggt::BigRat;
  // choose(m) = number of tuples with m separators.
  BigInt total = 0;
  // Depth-first over block norms; mult(k) = spheres[k].
  struct Rec {
    const std::vector<BigInt>& s;
    const BigRat& lambda;
    const BigRat& cap;
    BigInt total = 0;
    // used: lambda-norm so far; multiplier: product of sphere sizes chosen.
    void go(const BigRat& used, const BigInt& multiplier, bool last_was_identity, std::size_t blocks) {
      if (blocks >= 1) total += multiplier;
      if (blocks >= 1 && blocks >= 2 && last_was_identity) return;  // cannot extend
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == 0) continue;
        BigRat cost = used + (blocks == 0 ? BigRat(0) : lambda) + BigRat(BigInt(k));
        if (cost > cap) continue;
        go(cost, multiplier * s[k], k == 0, blocks + 1);
      }
    }
  } rec{spheres, lambda, cap};
  rec.go(BigRat(0), BigInt(1), false, 0);
  total = rec.total;
  return total;
}

}  // namespace oracles
