#include "ggt/growth.hpp"

#include <algorithm>
#include <cmath>
#include <omp.h>
#include <unordered_set>

#include "ggt/automaton.hpp"
#include "ggt/errors.hpp"

namespace ggt {

std::vector<BigInt> BallTable::spheres() const {
  std::vector<BigInt> s;
  s.reserve(counts.size());
  for (std::size_t r = 0; r < counts.size(); ++r) {
    s.push_back(r == 0 ? counts[0] : counts[r] - counts[r - 1]);
  }
  return s;
}

namespace {

// Shortlex-preserving word keys. Within one sphere all normal forms have the
// same length, so plain value/lex comparison sorts shortlex.
struct PackedCodec {
  using Key = unsigned __int128;
  unsigned base;
  explicit PackedCodec(unsigned rank) : base(2 * rank + 1) {}

  static bool fits(unsigned rank, unsigned radius) {
    long double bits = radius * std::log2l(static_cast<long double>(2 * rank + 1));
    return bits <= 126.0L;
  }

  Key pack(const Word& w) const {
    Key v = 0;
    for (Letter l : w.letters()) v = v * base + (static_cast<unsigned>(l) + 1);
    return v;
  }

  Word unpack(Key v) const {
    std::vector<Letter> rev;
    while (v != 0) {
      rev.push_back(static_cast<Letter>(static_cast<unsigned>(v % base) - 1));
      v /= base;
    }
    std::reverse(rev.begin(), rev.end());
    return Word(std::move(rev));
  }
};

struct StringCodec {
  using Key = std::string;
  explicit StringCodec(unsigned) {}
  static bool fits(unsigned, unsigned) { return true; }

  Key pack(const Word& w) const { return std::string(w.letters().begin(), w.letters().end()); }

  Word unpack(const Key& k) const {
    return Word(std::vector<Letter>(k.begin(), k.end()));
  }
};

template <class Codec>
BallTable ball_count_impl(const GroupModel& m, unsigned radius, const BallOptions& opt,
                          std::vector<Word>* keep) {
  Codec codec(m.rank());
  using Key = typename Codec::Key;
  BallTable table;
  table.model_name = m.name();
  table.counts.push_back(1);
  table.measured_radius = radius;
  if (keep) keep->push_back(Word());

  std::vector<Key> frontier{codec.pack(Word())};
  std::uint64_t total = 1;
  unsigned alphabet = 2 * m.rank();
  for (unsigned r = 1; r <= radius; ++r) {
    std::vector<Key> sphere;
#pragma omp parallel if (opt.parallel)
    {
      std::vector<Key> local;
#pragma omp for schedule(static) nowait
      for (long long i = 0; i < static_cast<long long>(frontier.size()); ++i) {
        Word w = codec.unpack(frontier[static_cast<std::size_t>(i)]);
        for (Letter l = 0; l < alphabet; ++l) {
          Word cand = w;
          cand.push(l);
          Word nf = m.normal_form(cand);
          // Normal forms are geodesic: new elements are exactly those whose
          // normal form has length r.
          if (nf.size() == r) local.push_back(codec.pack(nf));
        }
      }
#pragma omp critical
      sphere.insert(sphere.end(), local.begin(), local.end());
    }
    std::sort(sphere.begin(), sphere.end());
    sphere.erase(std::unique(sphere.begin(), sphere.end()), sphere.end());
    total += sphere.size();
    if (total > opt.max_elements) {
      fail(ErrorCode::memory_budget_exceeded,
           "ball enumeration exceeded the element budget; largest completed radius " + std::to_string(r - 1));
    }
    table.counts.push_back(table.counts.back() + BigInt(sphere.size()));
    if (keep) {
      for (const Key& k : sphere) keep->push_back(codec.unpack(k));
    }
    frontier = std::move(sphere);
  }
  return table;
}

}  // namespace

BallTable ball_count(const GroupModel& m, unsigned radius, const BallOptions& opt) {
  if (PackedCodec::fits(m.rank(), radius)) return ball_count_impl<PackedCodec>(m, radius, opt, nullptr);
  return ball_count_impl<StringCodec>(m, radius, opt, nullptr);
}

BallTable ball_count_serial(const GroupModel& m, unsigned radius, const BallOptions& opt) {
  BallTable table;
  table.model_name = m.name();
  table.counts.push_back(1);
  table.measured_radius = radius;
  std::unordered_set<std::string> visited;
  std::vector<Word> frontier{Word()};
  visited.insert(std::string());
  unsigned alphabet = 2 * m.rank();
  for (unsigned r = 1; r <= radius; ++r) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (Letter l = 0; l < alphabet; ++l) {
        Word cand = w;
        cand.push(l);
        Word nf = m.normal_form(cand);
        std::string key(nf.letters().begin(), nf.letters().end());
        if (visited.insert(std::move(key)).second) next.push_back(std::move(nf));
      }
    }
    if (visited.size() > opt.max_elements) {
      fail(ErrorCode::memory_budget_exceeded,
           "ball enumeration exceeded the element budget; largest completed radius " + std::to_string(r - 1));
    }
    table.counts.push_back(BigInt(visited.size()));
    frontier = std::move(next);
  }
  return table;
}

std::vector<Word> ball_elements(const GroupModel& m, unsigned radius, const BallOptions& opt) {
  std::vector<Word> out;
  if (PackedCodec::fits(m.rank(), radius)) {
    ball_count_impl<PackedCodec>(m, radius, opt, &out);
  } else {
    ball_count_impl<StringCodec>(m, radius, opt, &out);
  }
  return out;
}

BallTable extend_ball_table(const GroupModel& m, const BallTable& measured, unsigned radius) {
  const RewritingSystem* rules = m.certified_rules();
  if (rules == nullptr || !rules->confluent()) {
    fail(ErrorCode::validation, "model '" + m.name() + "' has no certified rule system for exact extension");
  }
  NormalFormCounter counter(m.rank(), rules->rules());
  std::vector<BigInt> spheres = counter.spheres(std::max(radius, measured.radius()));
  // Certify the automaton against every measured entry before trusting it.
  BigInt cum = 0;
  for (unsigned r = 0; r <= measured.radius(); ++r) {
    cum += spheres[r];
    if (cum != measured.counts[r]) {
      fail(ErrorCode::validation,
           "automaton sphere counts disagree with enumeration at radius " + std::to_string(r));
    }
  }
  BallTable out = measured;
  BigInt running = measured.counts.back();
  for (unsigned r = measured.radius() + 1; r <= radius; ++r) {
    running += spheres[r];
    out.counts.push_back(running);
  }
  return out;
}

GrowthEstimate growth_rate(const BallTable& table, unsigned window_lo, unsigned window_hi) {
  if (window_hi > table.radius() || window_lo > window_hi) {
    fail(ErrorCode::usage, "growth window outside the table");
  }
  unsigned n = window_hi - window_lo + 1;
  if (n < 3) fail(ErrorCode::window_too_small, "growth window needs at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (unsigned r = window_lo; r <= window_hi; ++r) {
    double x = r;
    double y = big_log(table.counts[r]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  double rss = 0;
  for (unsigned r = window_lo; r <= window_hi; ++r) {
    double y = big_log(table.counts[r]);
    double e = y - (slope * r + intercept);
    rss += e * e;
  }
  GrowthEstimate est;
  est.omega = std::max(slope, 0.0);
  est.window_lo = window_lo;
  est.window_hi = window_hi;
  est.method = GrowthMethod::tail_slope;
  est.residual = std::sqrt(rss / n);
  return est;
}

BigRat lambda_norm(const GroupModel& quotient, const FreeProductWord& w, const BigRat& lambda) {
  if (w.blocks.empty()) fail(ErrorCode::usage, "free-product word needs at least one block");
  for (std::size_t i = 1; i + 1 < w.blocks.size(); ++i) {
    if (quotient.is_identity(w.blocks[i])) {
      fail(ErrorCode::validation, "interior block is the identity; word not in reduced form");
    }
  }
  BigRat total = lambda * BigInt(w.separators());
  for (const Word& b : w.blocks) total += BigInt(quotient.geodesic_length(b));
  return total;
}

std::vector<BigInt> free_product_counts_scaled(const std::vector<BigInt>& spheres_scaled, long long lambda_s,
                                               long long radius_s) {
  if (lambda_s < 0 || radius_s < 0) fail(ErrorCode::usage, "negative lambda or radius");
  auto sphere = [&](long long k) -> const BigInt& {
    static const BigInt zero = 0;
    if (k < 0 || k >= static_cast<long long>(spheres_scaled.size())) return zero;
    return spheres_scaled[static_cast<std::size_t>(k)];
  };
  // T[t]: tails "1 gamma ..." of exact scaled norm t (first block after the
  // separator is interior unless it ends the word). D[t]: full words.
  std::vector<BigInt> T(static_cast<std::size_t>(radius_s) + 1);
  for (long long t = lambda_s; t <= radius_s; ++t) {
    BigInt acc = sphere(t - lambda_s);
    for (long long k = 1; k <= t - 2 * lambda_s; ++k) {
      const BigInt& s = sphere(k);
      if (s != 0) acc += s * T[static_cast<std::size_t>(t - lambda_s - k)];
    }
    T[static_cast<std::size_t>(t)] = std::move(acc);
  }
  std::vector<BigInt> cumulative(static_cast<std::size_t>(radius_s) + 1);
  BigInt running = 0;
  for (long long t = 0; t <= radius_s; ++t) {
    BigInt d = sphere(t);
    for (long long k = 0; k <= t - lambda_s; ++k) {
      const BigInt& s = sphere(k);
      if (s != 0) d += s * T[static_cast<std::size_t>(t - k)];
    }
    running += d;
    cumulative[static_cast<std::size_t>(t)] = running;
  }
  return cumulative;
}

namespace {

long long to_ll(const BigInt& b) { return b.convert_to<long long>(); }

}  // namespace

BigInt free_product_ball_count(const std::vector<BigInt>& spheres, const BigRat& lambda, const BigRat& radius) {
  if (lambda < 0 || radius < 0) fail(ErrorCode::usage, "lambda and radius must be nonnegative");
  BigInt den_l = boost::multiprecision::denominator(lambda);
  BigInt den_r = boost::multiprecision::denominator(radius);
  BigInt scale_big = boost::multiprecision::lcm(den_l, den_r);
  long long scale = to_ll(scale_big);
  long long lambda_s = to_ll(boost::multiprecision::numerator(lambda) * (scale_big / den_l));
  long long radius_s = to_ll(boost::multiprecision::numerator(radius) * (scale_big / den_r));
  std::vector<BigInt> spheres_scaled(static_cast<std::size_t>(radius_s) + 1);
  for (std::size_t k = 0; k < spheres.size(); ++k) {
    long long idx = static_cast<long long>(k) * scale;
    if (idx > radius_s) break;
    spheres_scaled[static_cast<std::size_t>(idx)] = spheres[k];
  }
  if (static_cast<long long>(spheres.size() - 1) * scale < radius_s) {
    fail(ErrorCode::usage, "sphere table too short for the requested radius");
  }
  return free_product_counts_scaled(spheres_scaled, lambda_s, radius_s).back();
}

namespace {

// log of sum_{k>=1} s_k z^{k} (scaled indices) via log-sum-exp; stable for
// astronomically large sphere counts and tiny z^lambda factors.
double log_block_series(const std::vector<double>& log_spheres, const std::vector<long long>& norms, double log_z) {
  double m = -HUGE_VAL;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    double t = log_spheres[i] + static_cast<double>(norms[i]) * log_z;
    if (t > m) m = t;
  }
  if (m == -HUGE_VAL) return -HUGE_VAL;
  double sum = 0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    sum += std::exp(log_spheres[i] + static_cast<double>(norms[i]) * log_z - m);
  }
  return m + std::log(sum);
}

}  // namespace

GrowthEstimate free_product_growth_rate(const std::vector<BigInt>& spheres, const BigRat& lambda) {
  if (lambda < 0) fail(ErrorCode::usage, "lambda must be nonnegative");
  BigInt den_l = boost::multiprecision::denominator(lambda);
  long long scale = to_ll(den_l);
  long long lambda_s = to_ll(boost::multiprecision::numerator(lambda));

  std::vector<double> log_spheres;
  std::vector<long long> norms;
  for (std::size_t k = 1; k < spheres.size(); ++k) {
    if (spheres[k] != 0) {
      log_spheres.push_back(big_log(spheres[k]));
      norms.push_back(static_cast<long long>(k) * scale);
    }
  }
  auto root_fn = [&](double log_z) {
    return static_cast<double>(lambda_s) * log_z + log_block_series(log_spheres, norms, log_z);
  };

  GrowthEstimate est;
  est.method = GrowthMethod::series_root;
  est.window_lo = 0;
  est.window_hi = static_cast<unsigned>(spheres.size()) - 1;
  if (norms.empty() || root_fn(0.0) < 0.0) {
    // Even at z = 1 the truncated series stays below 1: bounded growth.
    est.omega = 0.0;
    return est;
  }
  if (root_fn(std::log(1e-12)) >= 0.0) {
    fail(ErrorCode::series_diverged, "growth series exceeds 1/z^lambda arbitrarily close to 0");
  }
  double lo = std::log(1e-12), hi = 0.0;  // bisect on log z
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (root_fn(mid) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  double log_z_star = 0.5 * (lo + hi);
  est.omega = std::max(0.0, -log_z_star * static_cast<double>(scale));

  // Truncation movement: how much the estimate grew since half the radius.
  if (spheres.size() >= 6) {
    std::vector<BigInt> half(spheres.begin(), spheres.begin() + static_cast<long>(spheres.size() / 2));
    GrowthEstimate prev = free_product_growth_rate(half, lambda);
    est.residual = est.omega - prev.omega;
  }
  return est;
}

double gap_lower_bound(double omega_bar, double lambda) {
  double x = lambda * omega_bar;
  double term;
  if (x < 700.0) {
    term = std::log1p(std::exp(-x)) / (4.0 * lambda);
  } else {
    term = std::exp(-x) / (4.0 * lambda);  // may underflow to 0; see gap_term_log10
  }
  return omega_bar + term;
}

double gap_term_log10(double omega_bar, double lambda) {
  double x = lambda * omega_bar;
  constexpr double ln10 = 2.302585092994046;
  if (x < 700.0) {
    return std::log10(std::log1p(std::exp(-x)) / (4.0 * lambda));
  }
  return (-x - std::log(4.0 * lambda)) / ln10;
}

BigFloat gap_term_log10_big(double omega_bar, const BigRat& lambda) {
  BigFloat lam(lambda);
  BigFloat x = lam * BigFloat(omega_bar);
  static const BigFloat ln10 = log(BigFloat(10));
  if (x < 700) {
    return log10(log1p(exp(-x)) / (4 * lam));
  }
  return (-x - log(4 * lam)) / ln10;
}

std::vector<BigInt> RhoNet::member_spheres(unsigned radius) const {
  std::vector<BigInt> s(radius + 1, BigInt(0));
  for (std::uint64_t n : member_norms) {
    if (n <= radius) ++s[static_cast<std::size_t>(n)];
  }
  return s;
}

RhoNet build_rho_net(const GroupModel& quotient, const std::vector<Word>& elements, const BigRat& rho,
                     const BigRat& Delta) {
  RhoNet net;
  net.rho = rho;
  net.Delta = Delta;
  if (elements.empty() || !elements.front().empty()) {
    fail(ErrorCode::usage, "element list must start with the identity");
  }
  for (const Word& g : elements) {
    bool separated = true;
    for (const Word& m : net.members) {
      BigInt d(quotient.geodesic_length(reduced_concat(inverse_word(m), g)));
      if (BigRat(d) <= rho) {
        separated = false;
        break;
      }
    }
    if (separated) {
      net.members.push_back(g);
      net.member_norms.push_back(quotient.geodesic_length(g));
    }
  }
  // Maximality certificate: greedy construction covers everything it saw.
  for (const Word& g : elements) {
    bool covered = false;
    for (const Word& m : net.members) {
      BigInt d(quotient.geodesic_length(reduced_concat(inverse_word(m), g)));
      if (BigRat(d) <= rho) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      fail(ErrorCode::coverage_gap_at_boundary, "element escaped every net ball; greedy invariant broken");
    }
  }
  if (net.members.size() >= 2) {
    net.theta = net.members[1];
    BigRat theta_norm(BigInt(net.member_norms[1]));
    if (theta_norm > BigRat(2) * (Delta + rho)) {
      fail(ErrorCode::validation, "distinguished net element exceeds the 2(Delta+rho) bound");
    }
  }
  return net;
}

BigRat packing_radius(const BigRat& Delta, const BigRat& rho, const BigInt& card_ball) {
  return BigRat(3) * (Delta + rho) * BigRat(card_ball);
}

BigRat packing_radius_big(const BigRat& Delta, const BigRat& rho, const BigInt& card_ball_3) {
  return BigRat(15) * (Delta + rho) * BigRat(card_ball_3);
}

RhoComparisonReport verify_rho_comparison(const std::vector<BigInt>& quotient_spheres,
                                          const std::vector<BigInt>& net_spheres, const BigRat& lambda,
                                          const BigRat& lambda_prime, const BigRat& sigma, const BigRat& r_sigma,
                                          unsigned radius) {
  RhoComparisonReport rep;
  rep.radius = radius;
  rep.hypothesis_met = lambda_prime >= r_sigma + sigma;
  BigRat lam_total = lambda + lambda_prime;
  rep.rhs_lambda = (lam_total - sigma - r_sigma) / BigRat(2);
  if (rep.rhs_lambda < 0) {
    fail(ErrorCode::usage, "rhs separator weight is negative; sigma + r_sigma exceed lambda + lambda'");
  }
  rep.lhs = free_product_ball_count(quotient_spheres, lam_total, BigRat(radius));
  rep.rhs = free_product_ball_count(net_spheres, rep.rhs_lambda, BigRat(radius) + lam_total);
  rep.holds = rep.lhs <= rep.rhs;
  return rep;
}

}  // namespace ggt
