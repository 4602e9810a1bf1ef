#include "ggt/metric.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <omp.h>

#include "ggt/errors.hpp"

namespace ggt {

namespace {

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max() / 4;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

void FiniteMetricSpace::finish_from_adjacency() {
  n_ = static_cast<int>(adj_.size());
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
  d_.assign(static_cast<std::size_t>(n_) * n_, kUnreached);
  std::deque<int> queue;
  for (int src = 0; src < n_; ++src) {
    auto* row = &d_[static_cast<std::size_t>(src) * n_];
    row[src] = 0;
    queue.clear();
    queue.push_back(src);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int u : adj_[static_cast<std::size_t>(v)]) {
        if (row[u] == kUnreached) {
          row[u] = row[v] + 1;
          queue.push_back(u);
        }
      }
    }
    for (int j = 0; j < n_; ++j) {
      if (row[j] == kUnreached) fail(ErrorCode::validation, "metric space graph is disconnected");
    }
  }
  if (labels_.empty()) {
    labels_.reserve(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
  }
  if (n_ <= 200) validate_triangles();
}

void FiniteMetricSpace::validate_triangles() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k < n_; ++k) {
        if (dist(i, j) > dist(i, k) + dist(k, j)) {
          fail(ErrorCode::validation, "triangle inequality violated");
        }
      }
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::from_edges(const std::vector<std::pair<int, int>>& edges) {
  int n = 0;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0) fail(ErrorCode::usage, "edge endpoints must be nonnegative");
    n = std::max(n, std::max(u, v) + 1);
  }
  if (n == 0) fail(ErrorCode::usage, "edge list is empty");
  FiniteMetricSpace s;
  s.adj_.assign(static_cast<std::size_t>(n), {});
  for (auto [u, v] : edges) {
    if (u == v) continue;
    auto& au = s.adj_[static_cast<std::size_t>(u)];
    if (std::find(au.begin(), au.end(), v) == au.end()) {
      au.push_back(v);
      s.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
  }
  s.finish_from_adjacency();
  return s;
}

FiniteMetricSpace FiniteMetricSpace::tree_ball(unsigned rank, unsigned radius) {
  // Vertices are freely reduced words in BFS order, shortlex within levels.
  std::vector<Word> verts{Word()};
  std::size_t level_begin = 0;
  for (unsigned r = 1; r <= radius; ++r) {
    std::size_t level_end = verts.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (Letter l = 0; l < 2 * rank; ++l) {
        const Word& w = verts[i];
        if (!w.empty() && w.letters().back() == inverse_letter(l)) continue;
        Word child = w;
        child.push(l);
        verts.push_back(std::move(child));
      }
    }
    level_begin = level_end;
  }
  FiniteMetricSpace s;
  s.adj_.assign(verts.size(), {});
  s.labels_.reserve(verts.size());
  for (const Word& w : verts) s.labels_.push_back(w.empty() ? "e" : w.str());
  // Edges join w to its parent (w minus the last letter).
  std::vector<std::pair<Word, int>> index;
  index.reserve(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) index.emplace_back(verts[i], static_cast<int>(i));
  std::sort(index.begin(), index.end(),
            [](const auto& a, const auto& b) { return a.first.letters() < b.first.letters(); });
  auto find_id = [&](const Word& w) {
    auto it = std::lower_bound(index.begin(), index.end(), w, [](const auto& a, const Word& key) {
      return a.first.letters() < key.letters();
    });
    return it->second;
  };
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (verts[i].empty()) continue;
    Word parent(std::vector<Letter>(verts[i].letters().begin(), verts[i].letters().end() - 1));
    int p = find_id(parent);
    s.adj_[i].push_back(p);
    s.adj_[static_cast<std::size_t>(p)].push_back(static_cast<int>(i));
  }
  s.finish_from_adjacency();
  return s;
}

FiniteMetricSpace FiniteMetricSpace::cycle(unsigned n) {
  if (n < 3) fail(ErrorCode::usage, "cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (unsigned i = 0; i < n; ++i) edges.emplace_back(static_cast<int>(i), static_cast<int>((i + 1) % n));
  return from_edges(edges);
}

std::vector<int> FiniteMetricSpace::geodesic(int i, int j) const {
  if (dist(i, j) >= kUnreached) fail(ErrorCode::no_geodesic, "no geodesic between the endpoints");
  std::vector<int> trace{i};
  int cur = i;
  while (cur != j) {
    int next = -1;
    for (int u : neighbors(cur)) {
      if (dist(u, j) == dist(cur, j) - 1) {
        next = u;
        break;  // neighbors sorted: lexicographic tie-breaking
      }
    }
    if (next == -1) fail(ErrorCode::no_geodesic, "geodesic step failed");
    trace.push_back(next);
    cur = next;
  }
  return trace;
}

Rat gromov_product(const FiniteMetricSpace& s, int x, int y, int w) {
  return Rat(s.dist(x, w) + s.dist(y, w) - s.dist(x, y), 2);
}

namespace {

// Twice the four-point defect of a quadruple: largest pair-sum minus middle.
inline std::int64_t defect2(const std::int64_t* d, int n, int x, int y, int z, int w) {
  std::int64_t a = d[static_cast<std::size_t>(x) * n + y] + d[static_cast<std::size_t>(z) * n + w];
  std::int64_t b = d[static_cast<std::size_t>(x) * n + z] + d[static_cast<std::size_t>(y) * n + w];
  std::int64_t c = d[static_cast<std::size_t>(x) * n + w] + d[static_cast<std::size_t>(y) * n + z];
  std::int64_t lo = std::min(a, std::min(b, c));
  std::int64_t hi = std::max(a, std::max(b, c));
  std::int64_t mid = a + b + c - lo - hi;
  return hi - mid;
}

struct BestQuad {
  std::int64_t defect2 = -1;
  std::array<int, 4> witness{-1, -1, -1, -1};

  void consider(std::int64_t def, int x, int y, int z, int w) {
    if (def > defect2) {
      defect2 = def;
      witness = {x, y, z, w};
    }
  }
  // Deterministic merge: larger defect wins, ties resolved to the
  // lexicographically smallest witness, so the reduction order is immaterial.
  void merge(const BestQuad& o) {
    if (o.defect2 > defect2 || (o.defect2 == defect2 && o.witness < witness)) *this = o;
  }
};

}  // namespace

DeltaEstimate four_point_delta_serial(const FiniteMetricSpace& s) {
  int n = s.size();
  const std::int64_t* d = s.matrix().data();
  BestQuad best;
  best.consider(0, 0, 0, 0, 0);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = y + 1; z < n; ++z)
        for (int w = z + 1; w < n; ++w) best.consider(defect2(d, n, x, y, z, w), x, y, z, w);
  DeltaEstimate est;
  est.delta = Rat(best.defect2, 2);
  est.witness = best.witness;
  est.exhaustive = true;
  return est;
}

DeltaEstimate four_point_delta(const FiniteMetricSpace& s) {
  int n = s.size();
  const std::int64_t* d = s.matrix().data();
  BestQuad best;
  best.consider(0, 0, 0, 0, 0);
#pragma omp parallel
  {
    BestQuad local;
#pragma omp for schedule(dynamic, 1) nowait
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y)
        for (int z = y + 1; z < n; ++z)
          for (int w = z + 1; w < n; ++w) local.consider(defect2(d, n, x, y, z, w), x, y, z, w);
    }
#pragma omp critical
    best.merge(local);
  }
  DeltaEstimate est;
  est.delta = Rat(best.defect2, 2);
  est.witness = best.witness;
  est.exhaustive = true;
  return est;
}

DeltaEstimate four_point_delta_sampled(const FiniteMetricSpace& s, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) fail(ErrorCode::sample_size_zero, "sampled mode needs a positive sample count");
  int n = s.size();
  const std::int64_t* d = s.matrix().data();
  // Each sample derives its own state from seed + index, so any partition of
  // the sample range across workers yields the same result.
  struct BestSample {
    std::int64_t defect2 = -1;
    std::uint64_t idx = UINT64_MAX;
    std::array<int, 4> witness{0, 0, 0, 0};
  } best;
#pragma omp parallel
  {
    BestSample local;
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < static_cast<long long>(samples); ++i) {
      std::uint64_t h = splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(i) + 1)));
      int x = static_cast<int>(h % static_cast<std::uint64_t>(n));
      h = splitmix64(h);
      int y = static_cast<int>(h % static_cast<std::uint64_t>(n));
      h = splitmix64(h);
      int z = static_cast<int>(h % static_cast<std::uint64_t>(n));
      h = splitmix64(h);
      int w = static_cast<int>(h % static_cast<std::uint64_t>(n));
      std::int64_t def = defect2(d, n, x, y, z, w);
      if (def > local.defect2 || (def == local.defect2 && static_cast<std::uint64_t>(i) < local.idx)) {
        local.defect2 = def;
        local.idx = static_cast<std::uint64_t>(i);
        local.witness = {x, y, z, w};
      }
    }
#pragma omp critical
    {
      if (local.defect2 > best.defect2 || (local.defect2 == best.defect2 && local.idx < best.idx)) best = local;
    }
  }
  DeltaEstimate est;
  est.delta = Rat(std::max<std::int64_t>(best.defect2, 0), 2);
  est.witness = best.witness;
  est.exhaustive = false;
  est.sample_count = samples;
  est.seed = seed;
  return est;
}

Tripod tripod_map(const FiniteMetricSpace& s, int x, int y, int z) {
  // Realizes the geodesics up front so degenerate/missing paths surface here.
  s.geodesic(x, y);
  s.geodesic(x, z);
  s.geodesic(y, z);
  return Tripod{gromov_product(s, y, z, x), gromov_product(s, x, z, y), gromov_product(s, x, y, z)};
}

namespace {

// Tripod geometry in doubled units: a triangle point is (corner pair, arc
// position); its image sits on the arm of the nearer corner.
struct TriPoint {
  int side;     // 0: [x,y], 1: [x,z], 2: [y,z]
  std::int64_t pos2;  // doubled arc distance from the side's first corner
  int vertex;
};

// Doubled tripod distance between images of two triangle points.
std::int64_t tripod_dist2(const std::array<std::int64_t, 3>& arm2, std::int64_t side_len2_a, int side_a,
                          std::int64_t pos2_a, std::int64_t side_len2_b, int side_b, std::int64_t pos2_b) {
  // Corners per side: side 0 = (0,1) = (x,y), side 1 = (0,2), side 2 = (1,2).
  static constexpr int corners[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  auto locate = [&](int side, std::int64_t pos2, std::int64_t len2) {
    int c0 = corners[side][0], c1 = corners[side][1];
    if (pos2 <= arm2[static_cast<std::size_t>(c0)]) return std::pair<int, std::int64_t>(c0, pos2);
    return std::pair<int, std::int64_t>(c1, len2 - pos2);
  };
  auto [arm_a, s_a] = locate(side_a, pos2_a, side_len2_a);
  auto [arm_b, s_b] = locate(side_b, pos2_b, side_len2_b);
  if (arm_a == arm_b) return std::llabs(s_a - s_b);
  return (arm2[static_cast<std::size_t>(arm_a)] - s_a) + (arm2[static_cast<std::size_t>(arm_b)] - s_b);
}

// Returns the worst doubled slack; accumulates pair and violation counts.
std::int64_t tripod_band_one(const FiniteMetricSpace& s, int x, int y, int z, std::int64_t delta8,
                             std::uint64_t& checked, std::uint64_t& violations) {
  // delta8 = doubled 4*delta band width.
  std::array<int, 3> c{x, y, z};
  std::array<std::int64_t, 3> arm2;
  arm2[0] = s.dist(y, x) + s.dist(z, x) - s.dist(y, z);
  arm2[1] = s.dist(x, y) + s.dist(z, y) - s.dist(x, z);
  arm2[2] = s.dist(x, z) + s.dist(y, z) - s.dist(x, y);

  std::vector<TriPoint> pts;
  static constexpr int corners[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  std::array<std::int64_t, 3> len2;
  for (int side = 0; side < 3; ++side) {
    auto trace = s.geodesic(c[static_cast<std::size_t>(corners[side][0])], c[static_cast<std::size_t>(corners[side][1])]);
    len2[static_cast<std::size_t>(side)] = 2 * (static_cast<std::int64_t>(trace.size()) - 1);
    for (std::size_t t = 0; t < trace.size(); ++t) {
      pts.push_back(TriPoint{side, 2 * static_cast<std::int64_t>(t), trace[t]});
    }
  }
  std::int64_t worst2 = std::numeric_limits<std::int64_t>::max() / 8;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      std::int64_t img2 = tripod_dist2(arm2, len2[static_cast<std::size_t>(pts[i].side)], pts[i].side, pts[i].pos2,
                                       len2[static_cast<std::size_t>(pts[j].side)], pts[j].side, pts[j].pos2);
      std::int64_t real2 = 2 * s.dist(pts[i].vertex, pts[j].vertex);
      ++checked;
      // Band: real2 - delta8 <= img2 <= real2.
      std::int64_t slack = std::min(img2 - (real2 - delta8), real2 - img2);
      if (slack < worst2) worst2 = slack;
      if (slack < 0) ++violations;
    }
  }
  return worst2;
}

std::int64_t doubled(Rat r) {
  Rat two = Rat(2) * r;
  return two.num / two.den;
}

}  // namespace

ScanReport check_tripod_band(const FiniteMetricSpace& s, int x, int y, int z, Rat delta) {
  ScanReport rep;
  std::int64_t worst2 = tripod_band_one(s, x, y, z, doubled(Rat(4) * delta), rep.checked, rep.violations);
  rep.worst = Rat(worst2, 2);
  return rep;
}

namespace {

template <bool Parallel>
ScanReport tripod_band_all_impl(const FiniteMetricSpace& s, Rat delta) {
  std::int64_t delta8 = doubled(Rat(4) * delta);
  int n = s.size();
  ScanReport total;
  std::int64_t worst2 = std::numeric_limits<std::int64_t>::max() / 8;
#pragma omp parallel if (Parallel)
  {
    std::uint64_t checked = 0, violations = 0;
    std::int64_t local_worst2 = worst2;
#pragma omp for schedule(dynamic, 1) nowait
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) {
        for (int z = y + 1; z < n; ++z) {
          std::int64_t w2 = tripod_band_one(s, x, y, z, delta8, checked, violations);
          if (w2 < local_worst2) local_worst2 = w2;
        }
      }
    }
#pragma omp critical
    {
      total.checked += checked;
      total.violations += violations;
      if (local_worst2 < worst2) worst2 = local_worst2;
    }
  }
  total.worst = Rat(worst2, 2);
  return total;
}

}  // namespace

ScanReport check_tripod_band_all(const FiniteMetricSpace& s, Rat delta) { return tripod_band_all_impl<true>(s, delta); }
ScanReport check_tripod_band_all_serial(const FiniteMetricSpace& s, Rat delta) {
  return tripod_band_all_impl<false>(s, delta);
}

std::size_t project_to_geodesic(const FiniteMetricSpace& s, int x, const std::vector<int>& trace) {
  if (trace.empty()) fail(ErrorCode::usage, "empty geodesic trace");
  std::size_t best = 0;
  std::int64_t best_d = s.dist(x, trace[0]);
  for (std::size_t t = 1; t < trace.size(); ++t) {
    std::int64_t dt = s.dist(x, trace[t]);
    if (dt < best_d) {
      best_d = dt;
      best = t;
    }
  }
  return best;
}

LemmaReport check_projection_lemma(const FiniteMetricSpace& s, Rat delta, int x, const std::vector<int>& trace) {
  LemmaReport rep;
  std::size_t pi = project_to_geodesic(s, x, trace);
  int p = trace[pi];
  Rat worst = Rat(1'000'000'000);
  bool ok = true;
  for (int q : trace) {
    Rat product = gromov_product(s, x, q, p);
    Rat slack1 = Rat(4) * delta - product;
    Rat slack2 = Rat(s.dist(x, q)) - (Rat(s.dist(x, p)) + Rat(s.dist(p, q)) - Rat(8) * delta);
    Rat slack = slack1 < slack2 ? slack1 : slack2;
    if (slack < worst) worst = slack;
    if (slack < Rat(0)) ok = false;
  }
  rep.ok = ok;
  rep.worst = worst;
  return rep;
}

LemmaReport check_chain_lemma(const FiniteMetricSpace& s, Rat delta, int x, int y, int p, int q) {
  LemmaReport rep;
  Rat four_delta = Rat(4) * delta;
  bool hyp = gromov_product(s, x, q, p) <= four_delta && gromov_product(s, y, p, q) <= four_delta &&
             s.dist(x, p) <= s.dist(x, q) && s.dist(y, q) <= s.dist(y, p);
  // Non-degeneracy: the pairing (xy|pq) may not be the strictly smallest one,
  // or the chain collapses (x = y with p = q already breaks the bound).
  hyp = hyp && s.dist(x, y) + s.dist(p, q) >= s.dist(x, p) + s.dist(y, q);
  if (!hyp) {
    rep.hypotheses_met = false;
    rep.ok = true;
    rep.note = "hypotheses unmet";
    return rep;
  }
  Rat slack = Rat(s.dist(x, y)) - (Rat(s.dist(x, p) + s.dist(p, q) + s.dist(q, y)) - Rat(14) * delta);
  rep.ok = slack >= Rat(0);
  rep.worst = slack;
  return rep;
}

LemmaReport check_neighborhood_lemma(const FiniteMetricSpace& s, Rat delta, const std::vector<int>& trace,
                                     const std::vector<int>& path, Rat ell) {
  if (trace.empty() || path.empty()) fail(ErrorCode::usage, "empty trace or path");
  if (path.front() != trace.front() || path.back() != trace.back()) {
    fail(ErrorCode::usage, "path endpoints must match the segment endpoints");
  }
  std::int64_t length = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) length += s.dist(path[i], path[i + 1]);
  std::int64_t straight = s.dist(trace.front(), trace.back());
  if (Rat(length) > Rat(straight) + ell) {
    fail(ErrorCode::path_too_long, "path exceeds the allowed length budget");
  }
  Rat bound = ell / Rat(2) + Rat(8) * delta;
  LemmaReport rep;
  Rat worst = Rat(-1'000'000'000);
  bool ok = true;
  for (int z : path) {
    std::int64_t dz = std::numeric_limits<std::int64_t>::max();
    for (int t : trace) dz = std::min(dz, s.dist(z, t));
    Rat deviation(dz);
    if (deviation > worst) worst = deviation;
    if (deviation > bound) ok = false;
  }
  rep.ok = ok;
  rep.worst = worst;
  return rep;
}

namespace {

template <bool Parallel>
ScanReport scan_chain_impl(const FiniteMetricSpace& s, Rat delta) {
  int n = s.size();
  const std::int64_t* d = s.matrix().data();
  // Work in doubled units: products are half-integers.
  Rat d8r = Rat(8) * delta;
  std::int64_t delta8 = d8r.num / d8r.den;  // 2 * (4 delta)
  Rat d28r = Rat(28) * delta;
  std::int64_t delta28 = d28r.num / d28r.den;  // 2 * (14 delta)
  ScanReport total;
  std::int64_t worst2 = std::numeric_limits<std::int64_t>::max() / 8;
#pragma omp parallel if (Parallel)
  {
    std::uint64_t checked = 0, violations = 0;
    std::int64_t local_worst = worst2;
#pragma omp for schedule(dynamic, 1) nowait
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        for (int p = 0; p < n; ++p) {
          std::int64_t dxp = d[static_cast<std::size_t>(x) * n + p];
          for (int q = 0; q < n; ++q) {
            std::int64_t dxq = d[static_cast<std::size_t>(x) * n + q];
            if (dxp > dxq) continue;
            std::int64_t dyq = d[static_cast<std::size_t>(y) * n + q];
            std::int64_t dyp = d[static_cast<std::size_t>(y) * n + p];
            if (dyq > dyp) continue;
            std::int64_t dpq = d[static_cast<std::size_t>(p) * n + q];
            if (dxp + dpq - dxq > delta8) continue;      // 2*(x|q)_p > 8 delta
            if (dyq + dpq - dyp > delta8) continue;      // 2*(y|p)_q > 8 delta
            std::int64_t dxy = d[static_cast<std::size_t>(x) * n + y];
            if (dxy + dpq < dxp + dyq) continue;         // degenerate pairing
            std::int64_t slack2 = 2 * dxy - 2 * (dxp + dpq + dyq) + delta28;
            ++checked;
            if (slack2 < local_worst) local_worst = slack2;
            if (slack2 < 0) ++violations;
          }
        }
      }
    }
#pragma omp critical
    {
      total.checked += checked;
      total.violations += violations;
      if (local_worst < worst2) worst2 = local_worst;
    }
  }
  total.worst = Rat(worst2, 2);
  return total;
}

}  // namespace

ScanReport scan_chain_lemma(const FiniteMetricSpace& s, Rat delta) { return scan_chain_impl<true>(s, delta); }
ScanReport scan_chain_lemma_serial(const FiniteMetricSpace& s, Rat delta) { return scan_chain_impl<false>(s, delta); }

ScanReport scan_projection_lemma(const FiniteMetricSpace& s, Rat delta) {
  int n = s.size();
  const std::int64_t* d = s.matrix().data();
  std::int64_t delta8 = doubled(Rat(4) * delta);    // 2 * 4*delta
  std::int64_t delta16 = doubled(Rat(8) * delta);   // 2 * 8*delta
  ScanReport total;
  std::int64_t worst2 = std::numeric_limits<std::int64_t>::max() / 8;
#pragma omp parallel
  {
    std::uint64_t checked = 0, violations = 0;
    std::int64_t local_worst2 = worst2;
#pragma omp for schedule(dynamic, 1) nowait
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        auto trace = s.geodesic(a, b);
        for (int x = 0; x < n; ++x) {
          std::size_t pi = project_to_geodesic(s, x, trace);
          int p = trace[pi];
          std::int64_t dxp = d[static_cast<std::size_t>(x) * n + p];
          ++checked;
          bool bad = false;
          for (int q : trace) {
            std::int64_t dxq = d[static_cast<std::size_t>(x) * n + q];
            std::int64_t dpq = d[static_cast<std::size_t>(p) * n + q];
            std::int64_t slack_a = delta8 - (dxp + dpq - dxq);      // 8d - 2(x|q)_p
            std::int64_t slack_b = 2 * dxq - 2 * (dxp + dpq) + delta16;
            std::int64_t slack = std::min(slack_a, slack_b);
            if (slack < local_worst2) local_worst2 = slack;
            if (slack < 0) bad = true;
          }
          if (bad) ++violations;
        }
      }
    }
#pragma omp critical
    {
      total.checked += checked;
      total.violations += violations;
      if (local_worst2 < worst2) worst2 = local_worst2;
    }
  }
  total.worst = Rat(worst2, 2);
  return total;
}

}  // namespace ggt
