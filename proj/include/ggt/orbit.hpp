#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ggt/exact.hpp"
#include "ggt/models.hpp"
#include "ggt/rational.hpp"
#include "ggt/words.hpp"

namespace ggt {

// Minimal displacement of a nontrivial free-group element acting on its
// Cayley tree: the length of the cyclic reduction.
std::uint64_t displacement(const Word& xi);

struct StableNormEstimate {
  Rat estimate;      // |O xi^k(O)| / k at k = k_max; exact L on trees
  Rat lower, upper;  // Fekete bracket [L - 16 delta, L]
  double word_length_ratio;  // |xi^k| / k with the identity basepoint
};

StableNormEstimate stable_norm(const Word& xi, unsigned k_max);

// Everything attached to a fixed hyperbolic element xi of a free group
// acting on its Cayley tree: axis, origin, orbit points, Voronoi cells.
// delta = epsilon = 0 in this model; the origin O is the conjugator vertex,
// which lies on the axis, so |O xi(O)| = L exactly.
class OrbitContext {
 public:
  explicit OrbitContext(Word xi, unsigned ambient_rank = 2);

  const Word& xi() const { return xi_; }
  const Word& core() const { return core_; }
  const Word& conjugator() const { return conj_; }
  std::uint64_t L() const { return L_; }
  unsigned ambient_rank() const { return rank_; }
  bool origin_is_identity() const { return conj_.empty(); }

  // |O beta(O)|.
  std::uint64_t norm(const Word& beta) const;
  // |alpha(O) beta(O)|.
  std::uint64_t dist(const Word& alpha, const Word& beta) const;

  // Coordinates of beta(O) relative to the axis: signed arc position of the
  // projection and the distance to the axis.
  struct AxisPosition {
    long long t{0};
    std::uint64_t h{0};
  };
  AxisPosition locate(const Word& beta) const;

  // Orbit point x_i as an arc position (i > 0 at (i-1)L, i < 0 at iL).
  static long long orbit_position(long long index, std::uint64_t L);
  // Line order of cell indices: ord(i) = i for i < 0, i - 1 for i > 0.
  static long long ord(long long index);

  // Canonical cell index j(beta): nearest orbit point, ties to smallest ord.
  long long voronoi_index(const Word& beta) const;
  // Reference route: scan |O'-distances to orbit points directly.
  long long voronoi_index_oracle(const Word& beta) const;
  // All indices whose cell contains beta(O) (boundaries included).
  std::vector<long long> cell_memberships(const Word& beta) const;
  bool in_cell(const Word& beta, long long index) const;

  // xi^k in reduced form.
  Word xi_power(long long k) const;
  // Reduced word for xi^k * beta.
  Word translate(long long k, const Word& beta) const;

 private:
  Word xi_, core_, conj_;
  std::uint64_t L_{0};
  unsigned rank_{2};
};

int sign_of(long long index);

// beta_- = xi^{-2j-1} beta (j > 0) or xi^{-2j+1} beta (j < 0).
Word symmetric_element(const OrbitContext& ctx, const Word& beta);

struct OrbitCheck {
  bool ok{true};
  bool hypotheses_met{true};
  Rat defect;
  Rat bound;
  std::string note;
};

// | ||beta_-|| - ||beta|| | <= Delta_minus.
OrbitCheck check_symmetric_norm(const OrbitContext& ctx, const Word& beta, const Rat& delta_minus);

struct TwistedInfo {
  Word result;
  int eps{+1};                 // which of beta_+ / beta_- was used
  long long index_alpha{0};    // cell of alpha^{-1}(O)
  long long index_beta_eps{0}; // cell of beta_eps(O)
  bool separation_certified{false};  // some D_{+-1}, D_{+-2} strictly between
};

// alpha * beta with beta_+ when D_1 or D_{-1} separates alpha^{-1}(O) and
// beta(O) (strict betweenness in the ord order), beta_- otherwise. Also
// certifies the separation property of the chosen factor pair.
TwistedInfo twisted_product_info(const OrbitContext& ctx, const Word& alpha, const Word& beta);
Word twisted_product(const OrbitContext& ctx, const Word& alpha, const Word& beta);

// | ||alpha * beta|| - ||alpha|| - ||beta|| | <= Delta_star.
OrbitCheck check_twisted_norm(const OrbitContext& ctx, const Word& alpha, const Word& beta, const Rat& delta_star);

struct KappaInsertion {
  Word result;           // xi^kappa * beta
  int beta_sign{+1};
  bool formula_exact{true};   // result and its symmetric match the case formulas
  long long kappa_star{0};    // exponent appearing in alpha * (xi^kappa * beta)
};

// xi^kappa * beta for kappa >= 4, with the case decomposition certified by
// word equality. Throws KappaTooSmall below 4.
KappaInsertion kappa_insert(const OrbitContext& ctx, const Word& beta, unsigned kappa);

// |xy| >= |Ox| + |Oy| - 4L - 294 delta - 4 epsilon when the cells of x and y
// are separated by D_{+-1} or D_{+-2}. Vertices are given as reduced words.
OrbitCheck check_separation_lemma(const OrbitContext& ctx, const Word& x, const Word& y);

// Preimage word of minimal length, shortlex-least; requires the quotient
// norm to be reachable within `radius`.
Word eta_minimal_representative(const GroupModel& quotient, const Word& gamma, std::uint64_t radius);

// Derived constants of the construction, exact.
struct ConstantsBundle {
  Rat delta{0};
  Rat epsilon{0};
  std::uint64_t L{1};
  BigRat Delta;        // diam(X/G), 1/2 for Cayley graphs
  BigRat kappa;
  BigRat Delta_minus;  // 8L + 464 delta + 8 eps
  BigRat Delta_star;   // 12L + 758 delta + 12 eps
  BigRat lambda;
  BigRat rho;
  BigRat sigma;        // 3 (Delta + rho)
  BigRat r_sigma;      // 3 (Delta + sigma) card B(sigma)
  BigRat R_rho;        // 15 (Delta + rho) card B(3 (Delta + rho))
  BigRat lambda_tilde; // 2 lambda + R_rho
  bool scaled{false};  // overrides below the guaranteed thresholds
  bool lambda_ok{false};  // lambda >= kappa L + 2 Delta_star + Delta_minus
  bool rho_ok{false};     // rho >= (kappa+4) L + 4 (Delta_star + Delta_minus/2 + 8 delta)
  BigRat collision_bound;   // (kappa+4) L + 4 (Delta_star + Delta_minus/2 + 8 delta)
};

// card_ball(r) must return the exact quotient ball cardinality at rational
// radius r. Defaults: kappa = 160, lambda = 210 L, rho = 270 L.
ConstantsBundle make_constants(std::uint64_t L, const BigRat& Delta,
                               const std::function<BigInt(const BigRat&)>& card_ball,
                               std::optional<BigRat> kappa = {}, std::optional<BigRat> lambda = {},
                               std::optional<BigRat> rho = {});

struct CellScanReport {
  std::uint64_t vertices{0};
  std::uint64_t partition_violations{0};     // vertex in no cell or in non-adjacent cells
  std::uint64_t equivariance_violations{0};  // xi(D_i) != D_{i+1} pattern broken
  bool ok() const { return partition_violations == 0 && equivariance_violations == 0; }
};

// Exhaustive scan over all tree vertices of norm <= bound: every vertex lies
// in at least one cell, non-adjacent cells are disjoint, and membership is
// xi-equivariant. Requires a cyclically reduced xi (origin at the identity).
CellScanReport scan_cells(const OrbitContext& ctx, unsigned norm_bound);
CellScanReport scan_cells_serial(const OrbitContext& ctx, unsigned norm_bound);

}  // namespace ggt
