#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ggt/exact.hpp"
#include "ggt/models.hpp"
#include "ggt/words.hpp"

namespace ggt {

// Exact ball cardinalities of a group model. counts[r] = card B(r). The
// prefix up to measured_radius comes from breadth-first enumeration; any
// entries beyond it were produced by the certified normal-form automaton
// (exact as well, certified against the enumerated prefix).
struct BallTable {
  std::string model_name;
  std::vector<BigInt> counts;
  unsigned measured_radius{0};

  unsigned radius() const { return static_cast<unsigned>(counts.size()) - 1; }
  std::vector<BigInt> spheres() const;
};

struct BallOptions {
  std::uint64_t max_elements = 100'000'000;
  bool parallel = true;
};

// Breadth-first generation with normal-form deduplication. Spheres are
// deduplicated per level; normal forms are geodesic, so an element first
// appears at the level equal to its norm. Throws MemoryBudgetExceeded with
// the largest completed radius in the message.
BallTable ball_count(const GroupModel& m, unsigned radius, const BallOptions& opt = {});

// Independent reference: visited-set BFS over normal-form strings.
BallTable ball_count_serial(const GroupModel& m, unsigned radius, const BallOptions& opt = {});

// All elements of B(radius) as normal forms, sorted by (norm, shortlex).
std::vector<Word> ball_elements(const GroupModel& m, unsigned radius, const BallOptions& opt = {});

// Extends a measured table to `radius` with exact automaton counts, after
// verifying the automaton agrees with every measured entry.
BallTable extend_ball_table(const GroupModel& m, const BallTable& measured, unsigned radius);

enum class GrowthMethod { tail_slope, series_root };

struct GrowthEstimate {
  double omega{0.0};
  unsigned window_lo{0};
  unsigned window_hi{0};
  GrowthMethod method{GrowthMethod::tail_slope};
  double residual{0.0};
};

// Least-squares slope of log counts over [lo, hi]; throws WindowTooSmall for
// windows of fewer than 3 points. omega is clamped at 0.
GrowthEstimate growth_rate(const BallTable& table, unsigned window_lo, unsigned window_hi);

// Reduced alternating word over the quotient: blocks gamma_1 .. gamma_{m+1}
// with every interior block nontrivial (ends may be trivial).
struct FreeProductWord {
  std::vector<Word> blocks;
  std::size_t separators() const { return blocks.size() - 1; }
};

BigRat lambda_norm(const GroupModel& quotient, const FreeProductWord& w, const BigRat& lambda);

// Exact count of reduced free-product words of lambda-norm <= radius, by
// dynamic programming over the block sphere counts. spheres[k] = number of
// blocks of norm k; spheres must cover every norm up to the radius.
BigInt free_product_ball_count(const std::vector<BigInt>& spheres, const BigRat& lambda, const BigRat& radius);

// Scaled-integer core: cumulative counts B(0..R_s) with one unit = 1/scale.
std::vector<BigInt> free_product_counts_scaled(const std::vector<BigInt>& spheres_scaled, long long lambda_s,
                                               long long radius_s);

// Growth rate of the free product with separator weight lambda: log 1/z* for
// the smallest positive root of z^lambda * (F(z) - 1) = 1, F the truncated
// block growth series. Monotone nondecreasing in the truncation radius.
GrowthEstimate free_product_growth_rate(const std::vector<BigInt>& spheres, const BigRat& lambda);

// omega_bar + log(1 + e^{-lambda omega_bar}) / (4 lambda).
double gap_lower_bound(double omega_bar, double lambda);
// log10 of the additive gap term, computed in log space (never underflows).
double gap_term_log10(double omega_bar, double lambda);
// Same in a wide float, for lambdas (like lambda_tilde) beyond double range.
BigFloat gap_term_log10_big(double omega_bar, const BigRat& lambda);

struct RhoNet {
  BigRat rho;
  BigRat Delta;
  std::vector<Word> members;               // insertion order = (norm, shortlex)
  std::vector<std::uint64_t> member_norms;
  std::optional<Word> theta;               // first non-identity member

  // Sphere counts of the net members by norm, up to `radius`.
  std::vector<BigInt> member_spheres(unsigned radius) const;
};

// Greedy rho-separated net over the listed elements (sorted by norm then
// shortlex), starting from the identity. Certifies maximality: every listed
// element lies within rho of a member. Checks ||theta|| <= 2(Delta + rho).
RhoNet build_rho_net(const GroupModel& quotient, const std::vector<Word>& elements, const BigRat& rho,
                     const BigRat& Delta);

// r_rho = 3 (Delta + rho) card B(rho).
BigRat packing_radius(const BigRat& Delta, const BigRat& rho, const BigInt& card_ball);
// R_rho = 15 (Delta + rho) card B(3 (Delta + rho)).
BigRat packing_radius_big(const BigRat& Delta, const BigRat& rho, const BigInt& card_ball_3);

struct RhoComparisonReport {
  bool hypothesis_met{false};
  bool holds{false};
  unsigned radius{0};
  BigInt lhs;
  BigInt rhs;
  BigRat rhs_lambda;
};

// Counting inequality behind the lacunary comparison:
//   card B_{G*Z2, lambda+lambda'}(R) <= card B_{net*Z2, (lambda+lambda'-sigma-r_sigma)/2}(R + lambda + lambda').
// Exact on both sides. hypothesis_met records lambda' >= r_sigma + sigma.
RhoComparisonReport verify_rho_comparison(const std::vector<BigInt>& quotient_spheres,
                                          const std::vector<BigInt>& net_spheres, const BigRat& lambda,
                                          const BigRat& lambda_prime, const BigRat& sigma, const BigRat& r_sigma,
                                          unsigned radius);

}  // namespace ggt
