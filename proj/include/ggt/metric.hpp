#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ggt/rational.hpp"
#include "ggt/words.hpp"

namespace ggt {

// Finite metric space with exact integer distances (unit-weight graph
// metrics). The triangle inequality is verified exhaustively on construction
// for spaces of at most 200 points.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace from_edges(const std::vector<std::pair<int, int>>& edges);
  static FiniteMetricSpace tree_ball(unsigned rank, unsigned radius);
  static FiniteMetricSpace cycle(unsigned n);

  int size() const { return n_; }
  std::int64_t dist(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& neighbors(int i) const { return adj_[static_cast<std::size_t>(i)]; }
  const std::vector<std::int64_t>& matrix() const { return d_; }

  // Deterministic geodesic trace from i to j (lexicographic tie-breaking on
  // neighbor indices). Includes both endpoints.
  std::vector<int> geodesic(int i, int j) const;

 private:
  FiniteMetricSpace() = default;
  void finish_from_adjacency();
  void validate_triangles() const;

  int n_{0};
  std::vector<std::int64_t> d_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::string> labels_;
};

// (x|y)_w = (|xw| + |yw| - |xy|) / 2.
Rat gromov_product(const FiniteMetricSpace& s, int x, int y, int w);

struct DeltaEstimate {
  Rat delta;
  std::array<int, 4> witness{-1, -1, -1, -1};
  bool exhaustive{true};
  std::uint64_t sample_count{0};
  std::uint64_t seed{0};
};

// Smallest delta for which the four-point condition holds: maximum over
// quadruples of (largest pair-sum - middle pair-sum) / 2.
DeltaEstimate four_point_delta(const FiniteMetricSpace& s);
DeltaEstimate four_point_delta_serial(const FiniteMetricSpace& s);
DeltaEstimate four_point_delta_sampled(const FiniteMetricSpace& s, std::uint64_t samples, std::uint64_t seed);

struct Tripod {
  Rat arm_x, arm_y, arm_z;  // (y|z)_x, (x|z)_y, (x|y)_z
};

Tripod tripod_map(const FiniteMetricSpace& s, int x, int y, int z);

struct ScanReport {
  std::uint64_t checked{0};
  std::uint64_t violations{0};
  Rat worst;  // extremal slack; nonnegative iff no violation
  bool ok() const { return violations == 0; }
};

// Comparison of triangle-point distances with their tripod images:
// |pq| - 4*delta <= |phi(p) phi(q)| <= |pq| over all pairs on the triangle.
ScanReport check_tripod_band(const FiniteMetricSpace& s, int x, int y, int z, Rat delta);
ScanReport check_tripod_band_all(const FiniteMetricSpace& s, Rat delta);         // OpenMP over all triangles
ScanReport check_tripod_band_all_serial(const FiniteMetricSpace& s, Rat delta);

// Index into trace of the closest trace point; ties resolve toward the start.
std::size_t project_to_geodesic(const FiniteMetricSpace& s, int x, const std::vector<int>& trace);

struct LemmaReport {
  bool hypotheses_met{true};
  bool ok{false};
  Rat worst;
  std::string note;
};

// For p the projection of x: (x|q)_p <= 4*delta and |xq| >= |xp| + |pq| - 8*delta
// for every trace point q. `worst` is the smallest slack observed.
LemmaReport check_projection_lemma(const FiniteMetricSpace& s, Rat delta, int x, const std::vector<int>& trace);

// |xy| >= |xp| + |pq| + |qy| - 14*delta under the chain hypotheses.
LemmaReport check_chain_lemma(const FiniteMetricSpace& s, Rat delta, int x, int y, int p, int q);

// Every point of a path of length <= |xy| + ell stays within ell/2 + 8*delta
// of the geodesic trace.
LemmaReport check_neighborhood_lemma(const FiniteMetricSpace& s, Rat delta, const std::vector<int>& trace,
                                     const std::vector<int>& path, Rat ell);

// Exhaustive quadruple scan of the chain lemma (hypothesis-filtered).
ScanReport scan_chain_lemma(const FiniteMetricSpace& s, Rat delta);
ScanReport scan_chain_lemma_serial(const FiniteMetricSpace& s, Rat delta);

// Exhaustive projection-lemma scan over all points and all geodesics.
ScanReport scan_projection_lemma(const FiniteMetricSpace& s, Rat delta);

}  // namespace ggt
