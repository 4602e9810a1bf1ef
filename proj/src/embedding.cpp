#include "ggt/embedding.hpp"

#include <algorithm>
#include <omp.h>

#include "ggt/errors.hpp"

namespace ggt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Word EmbeddingConfig::representative(const Word& gamma) const {
  return eta_minimal_representative(*quotient, gamma, UINT64_MAX);
}

bool EmbeddingConfig::block_in_net(const Word& gamma) const {
  Word nf = quotient->normal_form(gamma);
  for (const Word& m : net.members) {
    if (m == nf) return true;
  }
  return false;
}

EmbeddingConfig make_embedding_config(std::shared_ptr<const GroupModel> quotient, Word xi,
                                      ConstantsBundle constants, RhoNet net) {
  OrbitContext ctx(std::move(xi), quotient->rank());
  if (!ctx.origin_is_identity()) {
    fail(ErrorCode::usage, "the embedding pipeline needs a cyclically reduced xi");
  }
  if (!quotient->is_identity(ctx.xi())) {
    fail(ErrorCode::usage, "xi does not lie in the kernel of the quotient");
  }
  if (boost::multiprecision::denominator(constants.kappa) != 1) {
    fail(ErrorCode::usage, "kappa must be an integer");
  }
  long long kappa_int = boost::multiprecision::numerator(constants.kappa).convert_to<long long>();
  if (kappa_int < 4) fail(ErrorCode::kappa_too_small, "kappa must be at least 4");
  return EmbeddingConfig{std::move(quotient), std::move(ctx), std::move(constants), std::move(net), kappa_int};
}

Word build_phi(const EmbeddingConfig& cfg, const FreeProductWord& w) {
  if (w.blocks.empty()) fail(ErrorCode::usage, "free-product word needs at least one block");
  for (const Word& b : w.blocks) {
    if (!cfg.block_in_net(b)) fail(ErrorCode::block_not_in_net, "block outside the rho-net");
  }
  // Built from the tail: image(tail) -> xi^kappa * image -> pre-twisted head.
  Word cur = cfg.representative(w.blocks.back());
  for (std::size_t i = w.blocks.size() - 1; i-- > 0;) {
    Word inserted = twisted_product(cfg.ctx, cfg.ctx.xi_power(cfg.kappa_int), cur);
    int eps = cfg.quotient->is_identity(w.blocks[i]) ? +1 : sign_of(cfg.ctx.voronoi_index(cur));
    Word head = cfg.representative(w.blocks[i]);
    if (eps < 0) head = symmetric_element(cfg.ctx, head);
    cur = twisted_product(cfg.ctx, head, inserted);
  }
  return cur;
}

PhiReport check_phi_nonexpanding(const EmbeddingConfig& cfg, const std::vector<FreeProductWord>& words,
                                 const BigRat& lambda) {
  PhiReport rep;
  rep.guaranteed = cfg.constants.lambda_ok;
  for (const FreeProductWord& w : words) {
    Word image = build_phi(cfg, w);
    BigRat budget = lambda_norm(*cfg.quotient, w, lambda);
    ++rep.checked;
    if (BigRat(BigInt(cfg.ctx.norm(image))) > budget) ++rep.violations;
  }
  return rep;
}

namespace {

// First pre-twisted factor of Phi(w), for the collision distance guard.
Word phi_first_factor(const EmbeddingConfig& cfg, const FreeProductWord& w) {
  Word head = cfg.representative(w.blocks.front());
  if (w.blocks.size() == 1) return head;
  Word tail = build_phi(cfg, FreeProductWord{{w.blocks.begin() + 1, w.blocks.end()}});
  int eps = cfg.quotient->is_identity(w.blocks.front()) ? +1 : sign_of(cfg.ctx.voronoi_index(tail));
  return eps < 0 ? symmetric_element(cfg.ctx, head) : head;
}

template <bool Parallel>
PhiReport phi_injective_impl(const EmbeddingConfig& cfg, const std::vector<FreeProductWord>& words) {
  PhiReport rep;
  rep.guaranteed = cfg.constants.lambda_ok && cfg.constants.rho_ok;
  rep.checked = words.size();
  std::vector<std::string> images(words.size());
#pragma omp parallel for schedule(dynamic, 8) if (Parallel)
  for (long long i = 0; i < static_cast<long long>(words.size()); ++i) {
    images[static_cast<std::size_t>(i)] = build_phi(cfg, words[static_cast<std::size_t>(i)]).str();
  }
  std::vector<std::size_t> order(words.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (images[a] != images[b]) return images[a] < images[b];
    return a < b;
  });
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    if (images[order[k]] == images[order[k + 1]]) {
      ++rep.violations;
      rep.collisions.emplace_back(order[k], order[k + 1]);
    }
  }
  // Collision distance guard on the first factors.
  BigRat bound = cfg.constants.collision_bound;
  for (auto [a, b] : rep.collisions) {
    Word fa = phi_first_factor(cfg, words[a]);
    Word fb = phi_first_factor(cfg, words[b]);
    BigRat d(BigInt(cfg.ctx.dist(fa, fb)));
    if (d > bound) rep.collision_guard_ok = false;
  }
  return rep;
}

}  // namespace

PhiReport check_phi_injective(const EmbeddingConfig& cfg, const std::vector<FreeProductWord>& words) {
  return phi_injective_impl<true>(cfg, words);
}

PhiReport check_phi_injective_serial(const EmbeddingConfig& cfg, const std::vector<FreeProductWord>& words) {
  return phi_injective_impl<false>(cfg, words);
}

std::vector<FreeProductWord> enumerate_net_words(const EmbeddingConfig& cfg, unsigned max_blocks,
                                                 const BigRat& lambda, const BigRat& norm_cap) {
  std::vector<FreeProductWord> out;
  std::vector<Word> blocks;
  const auto& members = cfg.net.members;
  const auto& norms = cfg.net.member_norms;

  auto rec = [&](auto&& self, const BigRat& used) -> void {
    out.push_back(FreeProductWord{blocks});
    if (blocks.size() >= max_blocks) return;
    // Extending turns the current last block into an interior one, which the
    // reduced form requires to be nontrivial (the very first block excepted).
    if (blocks.size() >= 2 && blocks.back().empty()) return;
    for (std::size_t i = 0; i < members.size(); ++i) {
      BigRat cost = used + lambda + BigRat(BigInt(norms[i]));
      if (cost > norm_cap) continue;
      blocks.push_back(members[i]);
      self(self, cost);
      blocks.pop_back();
    }
  };
  for (std::size_t i = 0; i < members.size(); ++i) {
    BigRat cost(BigInt(norms[i]));
    if (cost > norm_cap) continue;
    blocks.assign(1, members[i]);
    rec(rec, cost);
  }
  return out;
}

std::vector<FreeProductWord> sample_net_words(const EmbeddingConfig& cfg, unsigned max_blocks, std::uint64_t count,
                                              std::uint64_t seed) {
  std::vector<FreeProductWord> out;
  const auto& members = cfg.net.members;
  if (members.empty()) return out;
  std::size_t nontrivial_begin = members.size() > 1 ? 1 : 0;
  // An identity-only net has no admissible interior blocks.
  if (members.size() == 1) max_blocks = std::min(max_blocks, 2u);
  for (std::uint64_t s = 0; s < count; ++s) {
    std::uint64_t h = splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (s + 1)));
    unsigned blocks = 1 + static_cast<unsigned>(h % max_blocks);
    FreeProductWord w;
    for (unsigned b = 0; b < blocks; ++b) {
      h = splitmix64(h);
      bool interior = b > 0 && b + 1 < blocks;
      std::size_t lo = interior ? nontrivial_begin : 0;
      if (lo >= members.size()) lo = members.size() - 1;
      std::size_t pick = lo + static_cast<std::size_t>(h % (members.size() - lo));
      w.blocks.push_back(members[pick]);
    }
    out.push_back(std::move(w));
  }
  return out;
}

Word shortest_kernel_element(const GroupModel& quotient, unsigned rank, unsigned max_length) {
  // Shortlex order is length-major: scan reduced words of each length in lex
  // order and return the first kernel hit.
  for (unsigned len = 1; len <= max_length; ++len) {
    std::vector<Letter> cur;
    auto exact = [&](auto&& self) -> std::optional<Word> {
      if (cur.size() == len) {
        Word w(cur);
        if (quotient.is_identity(w)) return w;
        return std::nullopt;
      }
      for (Letter l = 0; l < 2 * rank; ++l) {
        if (!cur.empty() && cur.back() == inverse_letter(l)) continue;
        cur.push_back(l);
        auto hit = self(self);
        cur.pop_back();
        if (hit) return hit;
      }
      return std::nullopt;
    };
    auto hit = exact(exact);
    if (hit) return *hit;
  }
  fail(ErrorCode::search_exhausted, "no kernel element within length " + std::to_string(max_length));
}

TightnessReport run_tightness(const TightnessOptions& opt) {
  unsigned rank = opt.presentation.rank();
  FreeModel ambient(rank);
  auto quotient = std::make_shared<RewritingModel>(
      "quotient", complete_presentation(rank, opt.presentation.relators, opt.completion_cap));

  Word xi;
  if (opt.xi) {
    xi = free_reduce(*opt.xi);
    if (xi.empty()) fail(ErrorCode::usage, "xi must be nontrivial");
    if (!quotient->is_identity(xi)) fail(ErrorCode::usage, "xi is not in the normal closure");
    if (!cyclic_reduce(xi).second.empty()) fail(ErrorCode::usage, "xi must be cyclically reduced");
  } else {
    xi = shortest_kernel_element(*quotient, rank, 12);
  }

  BallOptions bopt;
  bopt.max_elements = opt.max_elements;
  TightnessReport rep;
  rep.quotient_name = quotient->name();
  rep.xi = xi;
  rep.seed = opt.seed;
  rep.table_G = ball_count(ambient, opt.radius_g, bopt);
  rep.table_Q = ball_count(*quotient, opt.radius_q, bopt);

  rep.omega_G = growth_rate(rep.table_G, opt.radius_g / 2, opt.radius_g);
  rep.omega_quotient = growth_rate(rep.table_Q, opt.radius_q / 2, opt.radius_q);

  std::uint64_t L = displacement(xi);
  // Exact quotient ball cardinalities at the radii the constants need; the
  // certified automaton extends past the enumerated range.
  BallTable extended = rep.table_Q;
  auto card_ball = [&](const BigRat& r) -> BigInt {
    if (r < 0) return BigInt(0);
    BigInt fl = rat_floor(r);
    unsigned radius = fl.convert_to<unsigned>();
    if (radius > extended.radius()) extended = extend_ball_table(*quotient, extended, radius);
    return extended.counts[radius];
  };
  rep.constants = make_constants(L, BigRat(1, 2), card_ball, opt.kappa, opt.lambda, opt.rho);
  if (rep.constants.scaled && !opt.allow_scaled) {
    fail(ErrorCode::usage, "constants fall below the guaranteed thresholds; pass --scaled to proceed");
  }

  // The net: enumerate as far as requested (or as far as useful).
  RhoNet net;
  net.rho = rep.constants.rho;
  net.Delta = rep.constants.Delta;
  unsigned net_radius = opt.net_radius;
  if (net_radius > 0 && BigRat(static_cast<long long>(net_radius)) > rep.constants.rho) {
    auto elements = ball_elements(*quotient, net_radius, bopt);
    net = build_rho_net(*quotient, elements, rep.constants.rho, rep.constants.Delta);
    rep.phi_sample_limited = false;
  } else {
    // Every enumerated element would lie within rho of the identity.
    net.members.push_back(Word());
    net.member_norms.push_back(0);
    rep.phi_sample_limited = true;
  }

  EmbeddingConfig cfg = make_embedding_config(quotient, xi, rep.constants, net);
  BigRat cap = opt.phi_norm_cap.value_or(BigRat(2) * rep.constants.lambda + BigRat(2) * rep.constants.rho);
  auto words = enumerate_net_words(cfg, opt.phi_max_blocks, rep.constants.lambda, cap);
  rep.phi_sample_size = words.size();
  PhiReport nonexp = check_phi_nonexpanding(cfg, words, rep.constants.lambda);
  PhiReport inj = check_phi_injective(cfg, words);
  rep.phi_nonexpanding_on_sample = nonexp.ok();
  rep.phi_injective_on_sample = inj.ok();

  double lam_tilde = rat_double(rep.constants.lambda_tilde);  // may be inf; the bound then collapses to omega_bar
  rep.gap_bound = gap_lower_bound(rep.omega_quotient.omega, lam_tilde);
  rep.gap_term_log10 = gap_term_log10_big(rep.omega_quotient.omega, rep.constants.lambda_tilde);
  double margin = rep.omega_G.residual + rep.omega_quotient.residual;
  rep.strict_gap_observed = rep.omega_quotient.omega + margin < rep.omega_G.omega;
  return rep;
}

}  // namespace ggt
