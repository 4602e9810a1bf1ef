#include <cmath>
#include <doctest.h>

#include "ggt/errors.hpp"
#include "ggt/growth.hpp"
#include "ggt/models.hpp"
#include "oracles.hpp"

using namespace ggt;

namespace {

Word W(const std::string& s, unsigned rank = 2) { return Word::parse(s, rank); }

}  // namespace

TEST_CASE("ball counts match the independent enumerators") {
  FreeModel f2(2);
  BallTable tf = ball_count(f2, 8);
  auto oracle_free = oracles::free_ball_counts(2, 8);
  REQUIRE(tf.counts.size() == 9);
  CHECK(tf.counts[1] == 5);
  CHECK(tf.counts[2] == 17);
  for (unsigned r = 0; r <= 8; ++r) CHECK(tf.counts[r] == BigInt(oracle_free[r]));

  FreeAbelianModel z2(2);
  BallTable tz = ball_count(z2, 12);
  CHECK(tz.counts[1] == 5);
  CHECK(tz.counts[2] == 13);
  for (unsigned r = 0; r <= 12; ++r) CHECK(tz.counts[r] == BigInt(oracles::z2_ball_count(r)));

  TorsionFreeProductModel t2(2);
  BallTable tt = ball_count(t2, 14);
  auto oracle_t = oracles::torsion_ball_counts(14);
  CHECK(tt.counts[1] == 4);
  CHECK(tt.counts[2] == 10);
  for (unsigned r = 0; r <= 14; ++r) CHECK(tt.counts[r] == BigInt(oracle_t[r]));
}

TEST_CASE("parallel enumeration equals the serial reference") {
  for (const std::string spec : {"free:2", "abelian:2", "torsion:2", "torsion:3", "free:3"}) {
    auto m = make_builtin_model(spec);
    BallTable a = ball_count(*m, 7);
    BallTable b = ball_count_serial(*m, 7);
    REQUIRE(a.counts.size() == b.counts.size());
    for (std::size_t r = 0; r < a.counts.size(); ++r) CHECK(a.counts[r] == b.counts[r]);
  }
}

TEST_CASE("ball table invariants and budget") {
  FreeModel f2(2);
  BallTable t = ball_count(f2, 6);
  CHECK(t.counts[0] == 1);
  for (std::size_t r = 1; r < t.counts.size(); ++r) CHECK(t.counts[r] >= t.counts[r - 1]);

  BallOptions tiny;
  tiny.max_elements = 10;
  CHECK_THROWS_AS(ball_count(f2, 6, tiny), Error);
  try {
    ball_count(f2, 6, tiny);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::memory_budget_exceeded);
    CHECK(std::string(e.what()).find("radius 1") != std::string::npos);
  }
}

TEST_CASE("ball elements are sorted by norm then shortlex") {
  FreeAbelianModel z2(2);
  auto elems = ball_elements(z2, 2);
  REQUIRE(elems.size() == 13);
  CHECK(elems[0] == W(""));
  CHECK(elems[1] == W("a"));
  CHECK(elems[2] == W("A"));
  CHECK(elems[3] == W("b"));
  CHECK(elems[4] == W("B"));
  CHECK(elems[5] == W("aa"));
  for (std::size_t i = 0; i + 1 < elems.size(); ++i) CHECK(shortlex_less(elems[i], elems[i + 1]));
}

TEST_CASE("automaton extension is exact and certified") {
  FreeModel f2(2);
  BallTable base = ball_count(f2, 6);
  BallTable ext = extend_ball_table(f2, base, 12);
  for (unsigned r = 0; r <= 12; ++r) {
    BigInt expect = 2 * boost::multiprecision::pow(BigInt(3), r) - 1;
    CHECK(ext.counts[r] == expect);
  }

  TorsionFreeProductModel t2(2);
  BallTable tbase = ball_count(t2, 10);
  BallTable text = extend_ball_table(t2, tbase, 30);
  for (unsigned r = 1; r <= 30; ++r) {
    BigInt expect = 3 * boost::multiprecision::pow(BigInt(2), r) - 2;
    CHECK(text.counts[r] == expect);
  }

  FreeAbelianModel z2(2);
  BallTable zext = extend_ball_table(z2, ball_count(z2, 8), 50);
  for (unsigned r = 0; r <= 50; ++r) {
    CHECK(zext.counts[r] == BigInt(2) * r * r + 2 * r + 1);
  }

  // A corrupted measurement must be rejected.
  BallTable broken = base;
  broken.counts[3] += 1;
  CHECK_THROWS_AS(extend_ball_table(f2, broken, 10), Error);
}

TEST_CASE("growth rates of the stock groups") {
  FreeModel f2(2);
  BallTable tf = extend_ball_table(f2, ball_count(f2, 8), 12);
  GrowthEstimate ef = growth_rate(tf, 6, 12);
  CHECK(std::abs(ef.omega - std::log(3.0)) < 0.05);

  FreeAbelianModel z2(2);
  BallTable tz = extend_ball_table(z2, ball_count(z2, 10), 50);
  GrowthEstimate ez = growth_rate(tz, 40, 50);
  CHECK(ez.omega <= 0.05);

  FreeAbelianModel z1(1);
  BallTable t1 = extend_ball_table(z1, ball_count(z1, 10), 50);
  CHECK(growth_rate(t1, 40, 50).omega <= 0.05);

  // Constant table: a finite group's growth is zero.
  BallTable flat;
  flat.model_name = "flat";
  flat.counts = {BigInt(1), BigInt(3), BigInt(4), BigInt(4), BigInt(4), BigInt(4)};
  flat.measured_radius = 5;
  CHECK(growth_rate(flat, 2, 5).omega == 0.0);

  CHECK_THROWS_AS(growth_rate(flat, 2, 3), Error);  // two points
  CHECK_THROWS_AS(growth_rate(flat, 2, 9), Error);  // outside the table
}

TEST_CASE("lambda norm on free-product words") {
  FreeAbelianModel z1(1);
  FreeProductWord single{{W("aaa", 1)}};
  CHECK(lambda_norm(z1, single, BigRat(7)) == BigRat(3));

  FreeProductWord separator{{W("", 1), W("", 1)}};
  CHECK(lambda_norm(z1, separator, BigRat(5)) == BigRat(5));

  FreeProductWord pair{{W("aa", 1), W("AAA", 1)}};
  CHECK(lambda_norm(z1, pair, BigRat(4)) == BigRat(9));

  FreeProductWord bad{{W("a", 1), W("", 1), W("a", 1)}};
  CHECK_THROWS_AS(lambda_norm(z1, bad, BigRat(1)), Error);
}

TEST_CASE("free-product ball counts: examples and brute-force oracle") {
  // Trivial quotient: the only elements are the empty word and the lone
  // separator (interior blocks cannot be trivial).
  std::vector<BigInt> trivial(8, BigInt(0));
  trivial[0] = 1;
  CHECK(free_product_ball_count(trivial, BigRat(2), BigRat(1)) == 1);
  CHECK(free_product_ball_count(trivial, BigRat(2), BigRat(2)) == 2);
  CHECK(free_product_ball_count(trivial, BigRat(2), BigRat(6)) == 2);

  // Z with lambda = 2 at radius 2: five single blocks plus the separator.
  std::vector<BigInt> z_spheres{BigInt(1), BigInt(2), BigInt(2)};
  CHECK(free_product_ball_count(z_spheres, BigRat(2), BigRat(2)) == 6);

  // Brute force agreement over a grid, including fractional lambda.
  FreeAbelianModel z1(1);
  std::vector<BigInt> spheres = ball_count(z1, 12).spheres();
  for (const BigRat& lambda : {BigRat(1), BigRat(2), BigRat(5, 4), BigRat(3)}) {
    for (unsigned radius = 0; radius <= 9; ++radius) {
      BigInt dp = free_product_ball_count(spheres, lambda, BigRat(radius));
      BigInt brute = oracles::free_product_brute_count(spheres, lambda, BigRat(radius));
      REQUIRE(dp == brute);
    }
  }

  TorsionFreeProductModel t2(2);
  std::vector<BigInt> tspheres = ball_count(t2, 10).spheres();
  for (unsigned radius = 0; radius <= 8; ++radius) {
    REQUIRE(free_product_ball_count(tspheres, BigRat(2), BigRat(radius)) ==
            oracles::free_product_brute_count(tspheres, BigRat(2), BigRat(radius)));
  }
}

TEST_CASE("separators priced above the radius leave the plain ball") {
  FreeAbelianModel z2(2);
  std::vector<BigInt> spheres = ball_count(z2, 10).spheres();
  BallTable t = ball_count(z2, 10);
  for (unsigned radius = 0; radius <= 10; ++radius) {
    CHECK(free_product_ball_count(spheres, BigRat(radius + 1), BigRat(radius)) == t.counts[radius]);
  }
}

TEST_CASE("free-product growth rate: series root") {
  // Trivial quotient: bounded, omega 0.
  std::vector<BigInt> trivial(8, BigInt(0));
  trivial[0] = 1;
  CHECK(free_product_growth_rate(trivial, BigRat(1)).omega == 0.0);

  // Z with lambda 1: the full series root is exactly log 2.
  FreeAbelianModel z1(1);
  std::vector<BigInt> spheres = extend_ball_table(z1, ball_count(z1, 10), 60).spheres();
  GrowthEstimate est = free_product_growth_rate(spheres, BigRat(1));
  CHECK(est.omega > 0.0);
  CHECK(std::abs(est.omega - std::log(2.0)) < 0.01);

  // Monotone in lambda.
  GrowthEstimate est3 = free_product_growth_rate(spheres, BigRat(3));
  CHECK(est3.omega <= est.omega);

  // Monotone in the truncation radius.
  double prev = 0.0;
  for (unsigned K : {10u, 20u, 40u, 60u}) {
    std::vector<BigInt> cut(spheres.begin(), spheres.begin() + K + 1);
    double om = free_product_growth_rate(cut, BigRat(1)).omega;
    CHECK(om >= prev - 1e-12);
    prev = om;
  }
}

TEST_CASE("series root and DP tail slope agree at truncation 40 lambda") {
  FreeAbelianModel z1(1);
  TorsionFreeProductModel t2(2);
  for (const GroupModel* m : {static_cast<const GroupModel*>(&z1), static_cast<const GroupModel*>(&t2)}) {
    for (unsigned lambda : {1u, 2u}) {
      unsigned K = 40 * lambda;
      std::vector<BigInt> spheres = extend_ball_table(*m, ball_count(*m, 8), K).spheres();
      double root = free_product_growth_rate(spheres, BigRat(lambda)).omega;
      auto counts = free_product_counts_scaled(spheres, lambda, K);
      BallTable fp;
      fp.model_name = "fp";
      fp.counts = counts;
      fp.measured_radius = K;
      double slope = growth_rate(fp, K / 2, K).omega;
      CHECK(std::abs(root - slope) < 0.05);
    }
  }
}

TEST_CASE("gap lower bound") {
  CHECK(std::abs(gap_lower_bound(0.0, 1.0) - 0.17328679514) < 1e-9);
  CHECK(std::abs(gap_lower_bound(std::log(2.0), 2.0) - 0.72104) < 1e-5);
  // Monotone decrease toward omega_bar over a lambda grid (within the range
  // where the additive term is representable in double precision).
  double prev = gap_lower_bound(0.5, 1.0);
  for (double lambda : {2.0, 4.0, 8.0, 16.0, 32.0}) {
    double cur = gap_lower_bound(0.5, lambda);
    CHECK(cur < prev);
    CHECK(cur > 0.5);
    prev = cur;
  }
  // Past that range the bound collapses to omega_bar in floating point, but
  // the log-space term stays finite (so it is still mathematically positive).
  CHECK(gap_lower_bound(0.5, 1e9) == 0.5);
  double lg = gap_term_log10(0.7, 6.6e6);
  CHECK(std::isfinite(lg));
  CHECK(lg < -1000.0);
}

TEST_CASE("rho nets") {
  FreeAbelianModel z1(1);
  auto elems = ball_elements(z1, 10);
  RhoNet net = build_rho_net(z1, elems, BigRat(3), BigRat(1, 2));
  REQUIRE(net.members.size() == 5);  // 0, +-4, +-8
  CHECK(net.members[0] == W("", 1));
  CHECK(net.members[1] == W("aaaa", 1));
  CHECK(net.members[2] == W("AAAA", 1));
  CHECK(net.member_norms[3] == 8);
  REQUIRE(net.theta.has_value());
  CHECK(*net.theta == W("aaaa", 1));

  // rho below the separation of a discrete model keeps every element.
  RhoNet all = build_rho_net(z1, elems, BigRat(1, 2), BigRat(1, 2));
  CHECK(all.members.size() == elems.size());

  // Separation and coverage, exhaustively on Z^2 with rho = 2.
  FreeAbelianModel z2(2);
  auto elems2 = ball_elements(z2, 3);
  RhoNet net2 = build_rho_net(z2, elems2, BigRat(2), BigRat(1, 2));
  for (std::size_t i = 0; i < net2.members.size(); ++i) {
    for (std::size_t j = i + 1; j < net2.members.size(); ++j) {
      std::uint64_t d = z2.geodesic_length(reduced_concat(inverse_word(net2.members[i]), net2.members[j]));
      REQUIRE(d > 2);
    }
  }
  for (const Word& g : elems2) {
    bool covered = false;
    for (const Word& m : net2.members) {
      if (z2.geodesic_length(reduced_concat(inverse_word(m), g)) <= 2) covered = true;
    }
    REQUIRE(covered);
  }
}

TEST_CASE("packing radii") {
  CHECK(packing_radius(BigRat(1, 2), BigRat(3), BigInt(7)) == BigRat(147, 2));  // 73.5
  CHECK(packing_radius(BigRat(1, 2), BigRat(0), BigInt(1)) == BigRat(3, 2));    // 3 Delta

  // Net-cardinality consequence of the packing bound on Z with rho = 3:
  // card B_net(r_rho) >= card B(rho).
  FreeAbelianModel z1(1);
  auto elems = ball_elements(z1, 80);
  RhoNet net = build_rho_net(z1, elems, BigRat(3), BigRat(1, 2));
  BigRat r_rho = packing_radius(BigRat(1, 2), BigRat(3), BigInt(7));
  std::uint64_t in_ball = 0;
  for (std::uint64_t n : net.member_norms) {
    if (BigRat(BigInt(n)) <= r_rho) ++in_ball;
  }
  CHECK(in_ball >= 7);
}

TEST_CASE("rho comparison counting inequality") {
  FreeAbelianModel z1(1);
  // Paper-exact constants for Z, rho = 3, Delta = 1/2.
  BigRat Delta(1, 2), rho(3);
  BigRat sigma = BigRat(3) * (Delta + rho);  // 21/2
  BallTable t = extend_ball_table(z1, ball_count(z1, 10), 800);
  BigInt card_sigma = t.counts[10];  // floor(21/2) = 10
  BigRat r_sigma = BigRat(3) * (Delta + sigma) * BigRat(card_sigma);
  BigRat lambda(2);
  BigRat threshold = r_sigma + sigma;
  BigRat lambda_prime = BigRat(rat_floor(threshold)) + BigRat(1);  // ceil for non-integers
  unsigned R = 10;

  BallTable big = extend_ball_table(z1, t, 900);
  auto elems = ball_elements(z1, 820);
  RhoNet net = build_rho_net(z1, elems, rho, Delta);
  auto quotient_spheres = big.spheres();
  auto net_spheres = net.member_spheres(820);
  RhoComparisonReport rep =
      verify_rho_comparison(quotient_spheres, net_spheres, lambda, lambda_prime, sigma, r_sigma, R);
  CHECK(rep.hypothesis_met);
  CHECK(rep.holds);
  CHECK(rep.lhs > 0);
  CHECK(rep.rhs > 0);

  // Too-small lambda' is reported, not asserted.
  RhoComparisonReport weak =
      verify_rho_comparison(quotient_spheres, net_spheres, lambda, BigRat(20), sigma, BigRat(10), R);
  CHECK_FALSE(weak.hypothesis_met);

  // Trivial quotient: both sides count separator-only words.
  std::vector<BigInt> trivial(12, BigInt(0));
  trivial[0] = 1;
  RhoComparisonReport triv = verify_rho_comparison(trivial, trivial, BigRat(1), BigRat(2), BigRat(1), BigRat(1), 5);
  CHECK(triv.hypothesis_met);
  CHECK(triv.holds);
}
