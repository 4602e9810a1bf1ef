#include "ggt/orbit.hpp"

#include <algorithm>
#include <cmath>

#include "ggt/errors.hpp"

namespace ggt {

std::uint64_t displacement(const Word& xi) {
  Word r = free_reduce(xi);
  if (r.empty()) fail(ErrorCode::not_hyperbolic, "the identity has no axis");
  return cyclic_reduce(r).first.size();
}

StableNormEstimate stable_norm(const Word& xi, unsigned k_max) {
  Word r = free_reduce(xi);
  if (r.empty()) fail(ErrorCode::not_hyperbolic, "the identity has no stable norm");
  if (k_max == 0) fail(ErrorCode::usage, "k_max must be positive");
  std::uint64_t L = cyclic_reduce(r).first.size();
  StableNormEstimate est;
  // With the origin on the axis, |O xi^k(O)| = kL exactly in a tree.
  est.estimate = Rat(static_cast<std::int64_t>(L));
  est.lower = Rat(static_cast<std::int64_t>(L));  // L - 16 delta, delta = 0
  est.upper = Rat(static_cast<std::int64_t>(L));
  est.word_length_ratio =
      static_cast<double>(word_pow(r, static_cast<long long>(k_max)).size()) / static_cast<double>(k_max);
  return est;
}

OrbitContext::OrbitContext(Word xi, unsigned ambient_rank) : xi_(free_reduce(xi)), rank_(ambient_rank) {
  if (xi_.empty()) fail(ErrorCode::not_hyperbolic, "xi must be a nontrivial element");
  for (Letter l : xi_.letters()) {
    if (letter_gen(l).index >= rank_) fail(ErrorCode::usage, "xi uses a letter outside the ambient alphabet");
  }
  auto [core, conj] = cyclic_reduce(xi_);
  core_ = std::move(core);
  conj_ = std::move(conj);
  L_ = core_.size();
  // The conjugator vertex realizes the displacement exactly: |O xi(O)| = L.
  if (norm(xi_) != L_) fail(ErrorCode::validation, "origin fails to realize the displacement");
}

namespace {

Word vertex_of(const OrbitContext& ctx, const Word& beta) {
  return reduced_concat(free_reduce(beta), ctx.conjugator());
}

}  // namespace

std::uint64_t OrbitContext::norm(const Word& beta) const {
  Word w = reduced_concat(inverse_word(conj_), vertex_of(*this, beta));
  return w.size();
}

std::uint64_t OrbitContext::dist(const Word& alpha, const Word& beta) const {
  Word w = reduced_concat(inverse_word(vertex_of(*this, alpha)), vertex_of(*this, beta));
  return w.size();
}

OrbitContext::AxisPosition OrbitContext::locate(const Word& beta) const {
  // Coordinates of the vertex relative to the origin O = conjugator: the axis
  // is the periodic line spelled by the cyclic core in both directions.
  Word w = reduced_concat(inverse_word(conj_), vertex_of(*this, beta));
  std::size_t f = 0;
  while (f < w.size() && w[f] == core_[f % L_]) ++f;
  std::size_t g = 0;
  if (f == 0) {
    Word ci = inverse_word(core_);
    while (g < w.size() && w[g] == ci[g % L_]) ++g;
  }
  AxisPosition pos;
  if (f > 0) {
    pos.t = static_cast<long long>(f);
    pos.h = w.size() - f;
  } else {
    pos.t = -static_cast<long long>(g);
    pos.h = w.size() - g;
  }
  return pos;
}

long long OrbitContext::orbit_position(long long index, std::uint64_t L) {
  return index > 0 ? (index - 1) * static_cast<long long>(L) : index * static_cast<long long>(L);
}

long long OrbitContext::ord(long long index) { return index < 0 ? index : index - 1; }

namespace {

long long index_of_position(long long p, std::uint64_t L) {
  long long j = p / static_cast<long long>(L);
  return j >= 0 ? j + 1 : j;
}

// Nearest orbit positions to arc position t: one or two multiples of L.
void nearest_positions(long long t, std::uint64_t L, long long out[2], int& count) {
  long long Ls = static_cast<long long>(L);
  long long q = t >= 0 ? t / Ls : -((-t + Ls - 1) / Ls);  // floor division
  long long p0 = q * Ls;
  long long p1 = p0 + Ls;
  long long d0 = t - p0;
  long long d1 = p1 - t;
  if (d0 < d1) {
    out[0] = p0;
    count = 1;
  } else if (d1 < d0) {
    out[0] = p1;
    count = 1;
  } else {
    out[0] = p0;
    out[1] = p1;
    count = 2;
  }
}

}  // namespace

long long OrbitContext::voronoi_index(const Word& beta) const {
  AxisPosition pos = locate(beta);
  long long cand[2];
  int count;
  nearest_positions(pos.t, L_, cand, count);
  // Ties resolve to the smaller position, i.e. the smallest ord.
  return index_of_position(cand[0], L_);
}

long long OrbitContext::voronoi_index_oracle(const Word& beta) const {
  Word v = vertex_of(*this, beta);
  long long range = static_cast<long long>(norm(beta) / L_) + 2;
  long long best_index = 0;
  std::uint64_t best_d = UINT64_MAX;
  for (long long i = -range; i <= range; ++i) {
    if (i == 0) continue;
    Word orbit_pt = reduced_concat(conj_, word_pow(core_, orbit_position(i, L_) / static_cast<long long>(L_)));
    std::uint64_t d = reduced_concat(inverse_word(orbit_pt), v).size();
    if (d < best_d || (d == best_d && ord(i) < ord(best_index))) {
      best_d = d;
      best_index = i;
    }
  }
  return best_index;
}

std::vector<long long> OrbitContext::cell_memberships(const Word& beta) const {
  AxisPosition pos = locate(beta);
  long long cand[2];
  int count;
  nearest_positions(pos.t, L_, cand, count);
  std::vector<long long> out;
  for (int i = 0; i < count; ++i) out.push_back(index_of_position(cand[i], L_));
  return out;
}

bool OrbitContext::in_cell(const Word& beta, long long index) const {
  auto cells = cell_memberships(beta);
  return std::find(cells.begin(), cells.end(), index) != cells.end();
}

Word OrbitContext::xi_power(long long k) const {
  Word p = word_pow(core_, k);
  return reduced_concat(reduced_concat(conj_, p), inverse_word(conj_));
}

Word OrbitContext::translate(long long k, const Word& beta) const {
  return reduced_concat(xi_power(k), free_reduce(beta));
}

int sign_of(long long index) { return index > 0 ? +1 : -1; }

Word symmetric_element(const OrbitContext& ctx, const Word& beta) {
  long long j = ctx.voronoi_index(beta);
  long long k = j > 0 ? -2 * j - 1 : -2 * j + 1;
  return ctx.translate(k, beta);
}

OrbitCheck check_symmetric_norm(const OrbitContext& ctx, const Word& beta, const Rat& delta_minus) {
  OrbitCheck chk;
  std::int64_t n = static_cast<std::int64_t>(ctx.norm(beta));
  std::int64_t nm = static_cast<std::int64_t>(ctx.norm(symmetric_element(ctx, beta)));
  chk.defect = Rat(std::llabs(nm - n));
  chk.bound = delta_minus;
  chk.ok = chk.defect <= chk.bound;
  return chk;
}

namespace {

bool strictly_between(long long lo, long long x, long long hi) { return lo < x && x < hi; }

bool ord_separates(long long k, long long i, long long j) {
  long long oi = OrbitContext::ord(i);
  long long oj = OrbitContext::ord(j);
  long long ok = OrbitContext::ord(k);
  return strictly_between(std::min(oi, oj), ok, std::max(oi, oj));
}

}  // namespace

TwistedInfo twisted_product_info(const OrbitContext& ctx, const Word& alpha, const Word& beta) {
  TwistedInfo info;
  Word a = free_reduce(alpha);
  Word b = free_reduce(beta);
  info.index_alpha = ctx.voronoi_index(inverse_word(a));
  long long jb = ctx.voronoi_index(b);
  bool separated = ord_separates(1, info.index_alpha, jb) || ord_separates(-1, info.index_alpha, jb);
  Word factor;
  if (separated) {
    info.eps = +1;
    factor = b;
    info.index_beta_eps = jb;
  } else {
    info.eps = -1;
    factor = symmetric_element(ctx, b);
    info.index_beta_eps = ctx.voronoi_index(factor);
  }
  info.result = reduced_concat(a, factor);
  for (long long k : {1LL, -1LL, 2LL, -2LL}) {
    if (ord_separates(k, info.index_alpha, info.index_beta_eps)) {
      info.separation_certified = true;
      break;
    }
  }
  return info;
}

Word twisted_product(const OrbitContext& ctx, const Word& alpha, const Word& beta) {
  return twisted_product_info(ctx, alpha, beta).result;
}

OrbitCheck check_twisted_norm(const OrbitContext& ctx, const Word& alpha, const Word& beta, const Rat& delta_star) {
  OrbitCheck chk;
  std::int64_t lhs = static_cast<std::int64_t>(ctx.norm(twisted_product(ctx, alpha, beta)));
  std::int64_t rhs = static_cast<std::int64_t>(ctx.norm(alpha)) + static_cast<std::int64_t>(ctx.norm(beta));
  chk.defect = Rat(std::llabs(lhs - rhs));
  chk.bound = delta_star;
  chk.ok = chk.defect <= chk.bound;
  return chk;
}

KappaInsertion kappa_insert(const OrbitContext& ctx, const Word& beta, unsigned kappa) {
  if (kappa < 4) fail(ErrorCode::kappa_too_small, "kappa must be at least 4");
  Word b = free_reduce(beta);
  long long j = ctx.voronoi_index(b);
  KappaInsertion ins;
  ins.beta_sign = sign_of(j);

  Word xik = ctx.xi_power(static_cast<long long>(kappa));
  Word product = twisted_product(ctx, xik, b);
  // Case formulas: xi^k beta for positive beta, xi^k beta_- for negative.
  Word expected = ins.beta_sign > 0 ? ctx.translate(kappa, b) : ctx.translate(kappa, symmetric_element(ctx, b));
  ins.result = product;
  ins.formula_exact = (product == expected);

  // Symmetric of the insertion: xi^{-kappa} beta_- (positive beta) or
  // xi^{-kappa-4} beta (negative beta); and the insertion itself is positive.
  Word sym = symmetric_element(ctx, product);
  Word expected_sym = ins.beta_sign > 0
                          ? ctx.translate(-static_cast<long long>(kappa), symmetric_element(ctx, b))
                          : ctx.translate(-static_cast<long long>(kappa) - 4, b);
  if (!(sym == expected_sym)) ins.formula_exact = false;
  if (ctx.voronoi_index(product) <= 0) ins.formula_exact = false;
  ins.kappa_star = ins.beta_sign > 0 ? -static_cast<long long>(kappa) : -static_cast<long long>(kappa) - 4;
  return ins;
}

OrbitCheck check_separation_lemma(const OrbitContext& ctx, const Word& x, const Word& y) {
  OrbitCheck chk;
  // Vertices are reduced words; their cells come from the axis coordinates of
  // the points themselves (not of group translates of O).
  auto index_of_vertex = [&](const Word& v) {
    Word w = reduced_concat(inverse_word(ctx.conjugator()), free_reduce(v));
    std::size_t f = 0;
    while (f < w.size() && w[f] == ctx.core()[f % ctx.L()]) ++f;
    std::size_t g = 0;
    if (f == 0) {
      Word ci = inverse_word(ctx.core());
      while (g < w.size() && w[g] == ci[g % ctx.L()]) ++g;
    }
    long long t = f > 0 ? static_cast<long long>(f) : -static_cast<long long>(g);
    long long cand[2];
    int count;
    nearest_positions(t, ctx.L(), cand, count);
    return index_of_position(cand[0], ctx.L());
  };
  long long ix = index_of_vertex(x);
  long long iy = index_of_vertex(y);
  bool separated = false;
  for (long long k : {1LL, -1LL, 2LL, -2LL}) {
    if (ord_separates(k, ix, iy)) {
      separated = true;
      break;
    }
  }
  if (!separated) {
    chk.hypotheses_met = false;
    chk.note = "hypotheses unmet";
    return chk;
  }
  Word xr = free_reduce(x);
  Word yr = free_reduce(y);
  std::int64_t dxy = static_cast<std::int64_t>(reduced_concat(inverse_word(xr), yr).size());
  std::int64_t ox = static_cast<std::int64_t>(reduced_concat(inverse_word(ctx.conjugator()), xr).size());
  std::int64_t oy = static_cast<std::int64_t>(reduced_concat(inverse_word(ctx.conjugator()), yr).size());
  std::int64_t bound = ox + oy - 4 * static_cast<std::int64_t>(ctx.L());  // delta = epsilon = 0
  chk.defect = Rat(dxy - bound);
  chk.bound = Rat(0);
  chk.ok = chk.defect >= Rat(0);
  return chk;
}

Word eta_minimal_representative(const GroupModel& quotient, const Word& gamma, std::uint64_t radius) {
  Word nf = quotient.normal_form(gamma);
  if (nf.size() > radius) {
    fail(ErrorCode::search_exhausted,
         "no preimage within radius " + std::to_string(radius) + " (norm is " + std::to_string(nf.size()) + ")");
  }
  // The shortlex normal form is a geodesic word, hence a 0-minimal preimage,
  // and it is shortlex-least among all words of its class.
  return nf;
}

ConstantsBundle make_constants(std::uint64_t L, const BigRat& Delta,
                               const std::function<BigInt(const BigRat&)>& card_ball,
                               std::optional<BigRat> kappa, std::optional<BigRat> lambda, std::optional<BigRat> rho) {
  ConstantsBundle c;
  c.L = L;
  c.Delta = Delta;
  BigRat Lr(static_cast<long long>(L));
  c.kappa = kappa.value_or(BigRat(160));
  c.lambda = lambda.value_or(BigRat(210) * Lr);
  c.rho = rho.value_or(BigRat(270) * Lr);
  c.Delta_minus = BigRat(8) * Lr;   // + 464 delta + 8 eps, both zero on trees
  c.Delta_star = BigRat(12) * Lr;   // + 758 delta + 12 eps
  c.sigma = BigRat(3) * (Delta + c.rho);
  c.r_sigma = BigRat(3) * (Delta + c.sigma) * BigRat(card_ball(c.sigma));
  c.R_rho = BigRat(15) * (Delta + c.rho) * BigRat(card_ball(BigRat(3) * (Delta + c.rho)));
  c.lambda_tilde = BigRat(2) * c.lambda + c.R_rho;
  c.lambda_ok = c.lambda >= c.kappa * Lr + BigRat(2) * c.Delta_star + c.Delta_minus;
  c.collision_bound = (c.kappa + 4) * Lr + BigRat(4) * (c.Delta_star + c.Delta_minus / 2);
  c.rho_ok = c.rho >= c.collision_bound;
  c.scaled = !(c.lambda_ok && c.rho_ok);
  return c;
}

namespace {

// Membership indices depend only on the arc position t of the projection
// (the off-axis distance h shifts every orbit distance equally).
void memberships_at(long long t, std::uint64_t L, long long out[2], int& count) {
  long long cand[2];
  nearest_positions(t, L, cand, count);
  for (int i = 0; i < count; ++i) out[i] = index_of_position(cand[i], L);
}

bool adjacent_in_ord(long long i, long long j) {
  return std::llabs(OrbitContext::ord(i) - OrbitContext::ord(j)) <= 1;
}

// Index translation induced by xi: position p -> p + L.
long long shifted_index(long long i, std::uint64_t L) {
  return index_of_position(OrbitContext::orbit_position(i, L) + static_cast<long long>(L), L);
}

}  // namespace

CellScanReport scan_cells(const OrbitContext& ctx, unsigned norm_bound) {
  if (!ctx.origin_is_identity()) {
    fail(ErrorCode::usage, "cell scans require a cyclically reduced xi");
  }
  // Every vertex v of the tree has axis coordinates (t, h); membership in a
  // cell is a function of t alone, so checking each arc position with its
  // exact vertex multiplicity covers the whole ball.
  std::uint64_t L = ctx.L();
  unsigned rank = ctx.ambient_rank();
  long long B = static_cast<long long>(norm_bound);
  CellScanReport rep;
  // Vertices per state: 1 on the axis, (2r-2)(2r-1)^{h-1} hanging off each
  // axis vertex at distance h.
  std::uint64_t branch = 2ULL * rank - 2;
  std::uint64_t arity = 2ULL * rank - 1;
  for (long long t = -B; t <= B; ++t) {
    long long room = B - std::llabs(t);
    std::uint64_t here = 1;  // the axis vertex itself
    std::uint64_t layer = branch;
    for (long long h = 1; h <= room; ++h) {
      if (here > UINT64_MAX - layer || (h < room && layer > UINT64_MAX / arity) ||
          rep.vertices > UINT64_MAX - here - layer) {
        fail(ErrorCode::usage, "norm bound too large for exact vertex counting");
      }
      here += layer;
      layer *= arity;
    }
    rep.vertices += here;

    long long idx[2];
    int count;
    memberships_at(t, L, idx, count);
    if (count == 0) {
      rep.partition_violations += here;
      continue;
    }
    if (count == 2 && !adjacent_in_ord(idx[0], idx[1])) rep.partition_violations += here;

    long long idx_next[2];
    int count_next;
    memberships_at(t + static_cast<long long>(L), L, idx_next, count_next);
    bool equivariant = count == count_next;
    if (equivariant) {
      for (int i = 0; i < count; ++i) {
        if (shifted_index(idx[i], L) != idx_next[i]) equivariant = false;
      }
    }
    if (!equivariant) rep.equivariance_violations += here;
  }
  return rep;
}

CellScanReport scan_cells_serial(const OrbitContext& ctx, unsigned norm_bound) {
  if (!ctx.origin_is_identity()) {
    fail(ErrorCode::usage, "cell scans require a cyclically reduced xi");
  }
  // Reference route: walk every reduced word and use the word-level oracle
  // machinery for membership.
  CellScanReport rep;
  std::uint64_t L = ctx.L();
  unsigned rank = ctx.ambient_rank();
  auto check_vertex = [&](const Word& v) {
    ++rep.vertices;
    auto cells = ctx.cell_memberships(v);
    if (cells.empty()) {
      ++rep.partition_violations;
      return;
    }
    if (cells.size() == 2 && !adjacent_in_ord(cells[0], cells[1])) ++rep.partition_violations;
    Word xv = ctx.translate(1, v);
    auto cells_next = ctx.cell_memberships(xv);
    bool equivariant = cells.size() == cells_next.size();
    if (equivariant) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (shifted_index(cells[i], L) != cells_next[i]) equivariant = false;
      }
    }
    if (!equivariant) ++rep.equivariance_violations;
  };
  // Iterative DFS over reduced words of length <= norm_bound.
  check_vertex(Word());
  std::vector<std::pair<Word, unsigned>> dfs;
  for (Letter l = 0; l < 2 * rank; ++l) dfs.emplace_back(Word({l}), 1u);
  while (!dfs.empty()) {
    auto [w, depth] = std::move(dfs.back());
    dfs.pop_back();
    check_vertex(w);
    if (depth == norm_bound) continue;
    for (Letter l = 0; l < 2 * rank; ++l) {
      if (w.letters().back() == inverse_letter(l)) continue;
      Word child = w;
      child.push(l);
      dfs.emplace_back(std::move(child), depth + 1);
    }
  }
  return rep;
}

}  // namespace ggt
