#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ggt/growth.hpp"
#include "ggt/models.hpp"
#include "ggt/orbit.hpp"
#include "ggt/presentation.hpp"

namespace ggt {

// Inputs of the embedding net-words -> ambient group: a certified quotient,
// a cyclically reduced hyperbolic element of the kernel, constants, and a
// rho-net whose members index the admissible blocks.
struct EmbeddingConfig {
  std::shared_ptr<const GroupModel> quotient;
  OrbitContext ctx;
  ConstantsBundle constants;
  RhoNet net;
  long long kappa_int{160};

  // Fixed 0-minimal representative of a quotient element.
  Word representative(const Word& gamma) const;
  bool block_in_net(const Word& gamma) const;
};

EmbeddingConfig make_embedding_config(std::shared_ptr<const GroupModel> quotient, Word xi,
                                      ConstantsBundle constants, RhoNet net);

// Phi(gamma_1 * 1 * ... * gamma_{m+1}), defined by induction on m:
// the first factor is pre-twisted by the sign of the image of the tail
// (plus if gamma_1 is trivial), then twisted-multiplied with
// xi^kappa * (image of the tail). Throws BlockNotInNet.
Word build_phi(const EmbeddingConfig& cfg, const FreeProductWord& w);

struct PhiReport {
  std::uint64_t checked{0};
  std::uint64_t violations{0};
  bool guaranteed{true};  // constants satisfied the hypotheses of the check
  std::vector<std::pair<std::size_t, std::size_t>> collisions;
  bool collision_guard_ok{true};
  bool ok() const { return violations == 0; }
};

// ||Phi(w)|| <= ||w||_lambda for every listed word.
PhiReport check_phi_nonexpanding(const EmbeddingConfig& cfg, const std::vector<FreeProductWord>& words,
                                 const BigRat& lambda);

// Pairwise distinct images over the listed words. On a collision, also
// evaluates the first-factor distance guard d(alpha_1, alpha_2) <=
// (kappa+4)L + 4(Delta_star + Delta_minus/2 + 8 delta).
PhiReport check_phi_injective(const EmbeddingConfig& cfg, const std::vector<FreeProductWord>& words);
PhiReport check_phi_injective_serial(const EmbeddingConfig& cfg, const std::vector<FreeProductWord>& words);

// All net words with at most max_blocks blocks and lambda-norm <= cap,
// interior blocks nontrivial, in deterministic member order.
std::vector<FreeProductWord> enumerate_net_words(const EmbeddingConfig& cfg, unsigned max_blocks,
                                                 const BigRat& lambda, const BigRat& norm_cap);

// Seeded random net words (for scaled-mode sweeps).
std::vector<FreeProductWord> sample_net_words(const EmbeddingConfig& cfg, unsigned max_blocks, std::uint64_t count,
                                              std::uint64_t seed);

struct TightnessOptions {
  Presentation presentation;
  std::optional<Word> xi;
  unsigned radius_g{12};
  unsigned radius_q{20};
  std::optional<BigRat> kappa, lambda, rho;
  unsigned net_radius{0};  // 0: restrict the net to the identity when rho exceeds it
  unsigned phi_max_blocks{3};
  std::optional<BigRat> phi_norm_cap;
  unsigned completion_cap{400};
  std::uint64_t max_elements{100'000'000};
  std::uint64_t seed{1};
  bool allow_scaled{true};  // reject overrides below the guaranteed thresholds when false
};

struct TightnessReport {
  std::string quotient_name;
  Word xi;
  GrowthEstimate omega_G;
  GrowthEstimate omega_quotient;
  ConstantsBundle constants;
  double gap_bound{0};
  BigFloat gap_term_log10{0};  // wide: lambda_tilde can dwarf double range
  bool strict_gap_observed{false};
  bool phi_injective_on_sample{false};
  bool phi_nonexpanding_on_sample{false};
  std::uint64_t phi_sample_size{0};
  bool phi_sample_limited{false};
  std::uint64_t seed{0};
  BallTable table_G;
  BallTable table_Q;
};

TightnessReport run_tightness(const TightnessOptions& opt);

// Shortlex-least nontrivial kernel element within the length cap.
Word shortest_kernel_element(const GroupModel& quotient, unsigned rank, unsigned max_length);

}  // namespace ggt
