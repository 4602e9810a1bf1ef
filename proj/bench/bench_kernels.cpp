// Timing comparison of the parallel kernels against their serial references.
// Each pair is verified to produce identical results before timing is
// reported, so the table doubles as a consistency check.

#include <cstdio>
#include <omp.h>
#include <string>

#include "ggt/growth.hpp"
#include "ggt/metric.hpp"
#include "ggt/models.hpp"
#include "ggt/orbit.hpp"
#include "ggt/parallel.hpp"
#include "ggt/rational.hpp"
#include "ggt/words.hpp"

using namespace ggt;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Word random_reduced_word(std::uint64_t seed, unsigned max_len) {
  std::uint64_t h = splitmix64(seed);
  unsigned len = 1 + static_cast<unsigned>(h % max_len);
  std::vector<Letter> ls;
  for (unsigned i = 0; i < len; ++i) {
    h = splitmix64(h);
    Letter l = static_cast<Letter>(h % 4);
    while (!ls.empty() && ls.back() == inverse_letter(l)) {
      h = splitmix64(h);
      l = static_cast<Letter>(h % 4);
    }
    ls.push_back(l);
  }
  return Word(std::move(ls));
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-34s %10.1f %10.1f %8.2fx   %s\n", name.c_str(), serial_ms, parallel_ms,
              serial_ms / parallel_ms, equal ? "results equal" : "MISMATCH");
}

}  // namespace

int main() {
  init_threads_from_env();
  std::printf("threads: %d\n", worker_count());
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

  {
    auto tree = FiniteMetricSpace::tree_ball(2, 4);
    double t0 = omp_get_wtime();
    DeltaEstimate serial = four_point_delta_serial(tree);
    double t1 = omp_get_wtime();
    DeltaEstimate parallel = four_point_delta(tree);
    double t2 = omp_get_wtime();
    row("four-point delta, tree r=4", (t1 - t0) * 1e3, (t2 - t1) * 1e3,
        serial.delta == parallel.delta && serial.witness == parallel.witness);
  }

  {
    TorsionFreeProductModel t2m(2);
    double t0 = omp_get_wtime();
    BallTable serial = ball_count_serial(t2m, 16);
    double t1 = omp_get_wtime();
    BallTable parallel = ball_count(t2m, 16);
    double t2 = omp_get_wtime();
    row("ball enumeration, Z2*Z r=16", (t1 - t0) * 1e3, (t2 - t1) * 1e3, serial.counts == parallel.counts);
  }

  {
    auto tree = FiniteMetricSpace::tree_ball(2, 4);
    double t0 = omp_get_wtime();
    ScanReport serial = scan_chain_lemma_serial(tree, Rat(0));
    double t1 = omp_get_wtime();
    ScanReport parallel = scan_chain_lemma(tree, Rat(0));
    double t2 = omp_get_wtime();
    row("chain-lemma scan, tree r=4", (t1 - t0) * 1e3, (t2 - t1) * 1e3,
        serial.checked == parallel.checked && serial.violations == parallel.violations &&
            serial.worst == parallel.worst);
  }

  {
    auto tree = FiniteMetricSpace::tree_ball(2, 4);
    double t0 = omp_get_wtime();
    ScanReport serial = check_tripod_band_all_serial(tree, Rat(0));
    double t1 = omp_get_wtime();
    ScanReport parallel = check_tripod_band_all(tree, Rat(0));
    double t2 = omp_get_wtime();
    row("tripod band scan, tree r=4", (t1 - t0) * 1e3, (t2 - t1) * 1e3,
        serial.checked == parallel.checked && serial.violations == parallel.violations &&
            serial.worst == parallel.worst);
  }

  {
    OrbitContext ctx(Word::parse("b", 2), 2);
    constexpr long long kPairs = 200000;
    double t0 = omp_get_wtime();
    std::uint64_t serial_viol = 0;
    for (long long i = 0; i < kPairs; ++i) {
      Word alpha = random_reduced_word(2 * static_cast<std::uint64_t>(i), 60);
      Word beta = random_reduced_word(2 * static_cast<std::uint64_t>(i) + 1, 60);
      if (!check_twisted_norm(ctx, alpha, beta, Rat(12)).ok) ++serial_viol;
    }
    double t1 = omp_get_wtime();
    std::uint64_t parallel_viol = 0;
#pragma omp parallel for reduction(+ : parallel_viol)
    for (long long i = 0; i < kPairs; ++i) {
      Word alpha = random_reduced_word(2 * static_cast<std::uint64_t>(i), 60);
      Word beta = random_reduced_word(2 * static_cast<std::uint64_t>(i) + 1, 60);
      if (!check_twisted_norm(ctx, alpha, beta, Rat(12)).ok) ++parallel_viol;
    }
    double t2 = omp_get_wtime();
    row("twisted-norm sweep, 2e5 pairs", (t1 - t0) * 1e3, (t2 - t1) * 1e3, serial_viol == parallel_viol);
  }

  {
    OrbitContext ctx(Word::parse("b", 2), 2);
    double t0 = omp_get_wtime();
    CellScanReport serial = scan_cells_serial(ctx, 12);
    double t1 = omp_get_wtime();
    CellScanReport classes = scan_cells(ctx, 12);
    double t2 = omp_get_wtime();
    row("cell scan, words vs classes r=12", (t1 - t0) * 1e3, (t2 - t1) * 1e3,
        serial.ok() == classes.ok() && serial.vertices == classes.vertices);
  }

  return 0;
}
