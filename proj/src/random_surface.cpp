#include "surf/random_surface.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "surf/fixtures.hpp"
#include "surf/genus_zero.hpp"
#include "surf/pants.hpp"
#include "surf/systole.hpp"

namespace surf {

namespace {

// Half-edge workpad with an arbitrary twin involution; relabeled into the
// 2i/2i+1 edge convention only when the final map is built.
struct FreeMap {
  std::vector<int32_t> twin, next;

  CombinatorialMap build() const {
    const int h = (int)twin.size();
    std::vector<int32_t> label(h, -1);
    int32_t id = 0;
    for (int32_t d = 0; d < h; ++d) {
      if (label[d] != -1) continue;
      label[d] = id;
      label[twin[d]] = id + 1;
      id += 2;
    }
    std::vector<int32_t> t2(h), n2(h);
    for (int32_t d = 0; d < h; ++d) {
      t2[label[d]] = label[twin[d]];
      n2[label[d]] = label[next[d]];
    }
    return CombinatorialMap(std::move(t2), std::move(n2));
  }

  static FreeMap from(const CombinatorialMap& m) {
    FreeMap f;
    f.twin.assign(m.raw_twin().begin(), m.raw_twin().end());
    f.next.assign(m.raw_next().begin(), m.raw_next().end());
    return f;
  }

  // inserts two vertices on edge {h, twin[h]} joined by a bigon; +2 vertices,
  // +3 edges, +1 face, genus unchanged
  void bubble(int32_t h) {
    int32_t hb = twin[h];
    int32_t A = alloc(), B = alloc(), x1 = alloc(), x2 = alloc(), y1 = alloc(), y2 = alloc();
    twin[h] = A;
    twin[A] = h;
    twin[hb] = B;
    twin[B] = hb;
    twin[x1] = x2;
    twin[x2] = x1;
    twin[y1] = y2;
    twin[y2] = y1;
    // rotations: u = (y1, x1, A), w = (x2, y2, B)
    next[y1] = x1;
    next[x1] = A;
    next[A] = y1;
    next[x2] = y2;
    next[y2] = B;
    next[B] = x2;
  }

  int32_t alloc() {
    twin.push_back(-1);
    next.push_back(-1);
    return (int32_t)twin.size() - 1;
  }
};

// rotation cycle members at the origin of h (trivalent)
struct Triple {
  int32_t a, b, c;
};

}  // namespace

bool try_flip(std::vector<int32_t>& twin, std::vector<int32_t>& next, int32_t h) {
  int32_t hb = twin[h];
  int32_t a = next[h], b = next[a];
  if (a == hb || b == hb) return false;  // loop edge
  if (next[b] != h) return false;        // not trivalent here
  int32_t c = next[hb], d2 = next[c];
  if (next[d2] != hb) return false;
  if (c == h || d2 == h) return false;
  // contract e and re-expand the other way: u = (h, d2, a), w = (hb, b, c)
  next[h] = d2;
  next[d2] = a;
  next[a] = h;
  next[hb] = b;
  next[b] = c;
  next[c] = hb;
  return true;
}

std::optional<CrossMetricSurface> raw_configuration_sample(int n, uint64_t seed) {
  SURF_CHECK(n >= 2 && n % 2 == 0, "configuration model needs even n >= 2");
  SplitMix64 rng(seed);
  const int h = 3 * n;
  // uniformly random perfect matching on the labeled half-edges
  std::vector<int32_t> darts(h);
  for (int32_t i = 0; i < h; ++i) darts[i] = i;
  for (int32_t i = h - 1; i > 0; --i) std::swap(darts[i], darts[rng.below(i + 1)]);
  std::vector<int32_t> mate(h);
  for (int32_t i = 0; i < h; i += 2) {
    mate[darts[i]] = darts[i + 1];
    mate[darts[i + 1]] = darts[i];
  }
  // uniformly random rotation triple per vertex: darts 3v,3v+1,3v+2
  std::vector<int32_t> rot(h);
  for (int v = 0; v < n; ++v) {
    int32_t base = 3 * v;
    if (rng.below(2) == 0) {
      rot[base] = base + 1;
      rot[base + 1] = base + 2;
      rot[base + 2] = base;
    } else {
      rot[base] = base + 2;
      rot[base + 2] = base + 1;
      rot[base + 1] = base;
    }
  }
  // relabel so twins pair as 2i/2i+1
  std::vector<int32_t> label(h, -1);
  int32_t id = 0;
  for (int32_t d = 0; d < h; ++d) {
    if (label[d] != -1) continue;
    label[d] = id;
    label[mate[d]] = id + 1;
    id += 2;
  }
  std::vector<int32_t> twin(h), next(h);
  for (int32_t d = 0; d < h; ++d) {
    twin[label[d]] = label[mate[d]];
    next[label[d]] = label[rot[d]];
  }
  try {
    return CrossMetricSurface(CombinatorialMap(std::move(twin), std::move(next)));
  } catch (const SurfError&) {
    return std::nullopt;  // disconnected gluing
  }
}

namespace {

// one-vertex triangulation of genus g (4g-gon with diagonals): v=1, n=4g-2
Triangulation one_vertex_genus(int g) {
  SURF_CHECK(g >= 1, "one-vertex triangulation needs genus >= 1");
  const int sides = 4 * g;
  auto side_dart = [&](int i) -> int32_t {
    int k = i / 4, r = i % 4;
    int eid = (r % 2 == 0) ? 2 * k : 2 * k + 1;
    int dir = (r < 2) ? 0 : 1;
    return 2 * eid + dir;
  };
  // diagonals d_i from corner 0 to corner i, i = 2..4g-2
  auto diag_dart = [&](int i, int dir) -> int32_t { return 2 * (2 * g + (i - 2)) + dir; };
  const int total = 2 * (2 * g + (sides - 3));
  std::vector<int32_t> twin(total), next(total, -1);
  for (int32_t d = 0; d < total; ++d) twin[d] = d ^ 1;
  auto from0 = [&](int i, int rev) -> int32_t {
    // path corner 0 -> corner i along the fan: i=1 is side 0, i=4g-1 is the
    // reversed last side, otherwise a diagonal
    if (i == 1) return rev ? (side_dart(0) ^ 1) : side_dart(0);
    if (i == sides - 1) return rev ? side_dart(sides - 1) : (side_dart(sides - 1) ^ 1);
    return rev ? (diag_dart(i, 0) ^ 1) : diag_dart(i, 0);
  };
  for (int i = 1; i <= sides - 2; ++i) {
    int32_t f0 = from0(i, 0);          // 0 -> i
    int32_t f1 = side_dart(i);         // i -> i+1
    int32_t f2 = from0(i + 1, 1);      // i+1 -> 0
    next[twin[f0]] = f1;
    next[twin[f1]] = f2;
    next[twin[f2]] = f0;
  }
  CombinatorialMap m(std::move(twin), std::move(next));
  SURF_CHECK(m.genus() == g && m.num_vertices() == 1, "one-vertex gluing is wrong");
  return Triangulation(std::move(m));
}

CrossMetricSurface flip_walk_surface(int n, int g, uint64_t seed) {
  // start from the smallest canonical genus-g trivalent map, grow to n
  // vertices with bigon insertions, then mix with seeded flips
  Triangulation base = (n == 4 * g - 2) ? one_vertex_genus(g)
                       : (g >= 1 ? canonical_genus(g) : octahedron());
  CrossMetricSurface dual0 = dualize(base);
  FreeMap fm = FreeMap::from(dual0.map());
  SplitMix64 rng(seed ^ 0x5eedf00dULL);
  int have = dual0.n();
  SURF_CHECK(n >= have && (n - have) % 2 == 0, "cannot grow base surface to n");
  for (; have < n; have += 2) {
    int32_t e = (int32_t)rng.below(fm.twin.size() / 2);
    fm.bubble(2 * e);
  }
  long long flips_wanted = 30LL * n;
  long long done = 0, attempts = 0;
  while (done < flips_wanted && attempts < 40 * flips_wanted) {
    ++attempts;
    int32_t d = (int32_t)rng.below(fm.twin.size());
    if (try_flip(fm.twin, fm.next, d)) ++done;
  }
  CrossMetricSurface out{fm.build()};
  SURF_CHECK(out.genus() == g && out.n() == n, "flip walk changed the surface type");
  return out;
}

}  // namespace

CrossMetricSurface random_surface(const RandomSurfaceSpec& spec) {
  if (spec.n < 2 || spec.n % 2 != 0)
    throw SurfError(ErrorCode::ConditionUnsatisfiable, "n must be even and at least 2");
  const int gmax = (spec.n + 2) / 4;
  switch (spec.condition) {
    case SurfaceCondition::None:
    case SurfaceCondition::Connected: {
      // connectivity is part of the map representation, so both conditions
      // sample by rejection until the gluing is connected
      for (uint64_t attempt = 0;; ++attempt) {
        auto s = raw_configuration_sample(spec.n, spec.seed + 0x100000001ULL * attempt);
        if (s) return *s;
        SURF_CHECK(attempt < 1'000'000, "connected gluing rejection exhausted");
      }
    }
    case SurfaceCondition::GenusMin: {
      if (spec.genus > gmax)
        throw SurfError(ErrorCode::ConditionUnsatisfiable, "genus exceeds (n+2)/4");
      for (uint64_t attempt = 0;; ++attempt) {
        auto s = raw_configuration_sample(spec.n, spec.seed + 0x100000001ULL * attempt);
        if (s && s->genus() >= spec.genus) return *s;
        if (attempt >= 1'000'000)
          throw SurfError(ErrorCode::ConditionUnsatisfiable, "genus-min rejection exhausted");
      }
    }
    case SurfaceCondition::GenusExact: {
      if (spec.genus > gmax)
        throw SurfError(ErrorCode::ConditionUnsatisfiable, "genus exceeds (n+2)/4");
      if (spec.genus == 0) {
        // genus 0 trivalent maps need n >= 4 (the sphere dual of the
        // tetrahedron); grow-and-flip from the octahedron dual
        if (spec.n < 4)
          throw SurfError(ErrorCode::ConditionUnsatisfiable, "genus zero needs n >= 4");
        Triangulation base = tetrahedron();
        CrossMetricSurface dual0 = dualize(base);
        FreeMap fm = FreeMap::from(dual0.map());
        SplitMix64 rng(spec.seed ^ 0x5eedf00dULL);
        int have = dual0.n();
        SURF_CHECK(spec.n >= have && (spec.n - have) % 2 == 0, "cannot reach n from tetrahedron");
        for (; have < spec.n; have += 2) fm.bubble(2 * (int32_t)rng.below(fm.twin.size() / 2));
        long long flips_wanted = 30LL * spec.n, done = 0, attempts = 0;
        while (done < flips_wanted && attempts < 40 * flips_wanted) {
          ++attempts;
          if (try_flip(fm.twin, fm.next, (int32_t)rng.below(fm.twin.size()))) ++done;
        }
        CrossMetricSurface out{fm.build()};
        SURF_CHECK(out.genus() == 0 && out.n() == spec.n, "flip walk changed the surface type");
        return out;
      }
      // near the top of the genus range rejection is cheap (typical genus is
      // nearly maximal); otherwise use the genus-preserving flip walk
      if (spec.n <= 32 || spec.genus >= gmax - 1) {
        for (uint64_t attempt = 0; attempt < 200'000; ++attempt) {
          auto s = raw_configuration_sample(spec.n, spec.seed + 0x100000001ULL * attempt);
          if (s && s->genus() == spec.genus) return *s;
        }
        // fall through to the flip walk when rejection fails
      }
      if (spec.n < 4 * spec.genus - 2)
        throw SurfError(ErrorCode::ConditionUnsatisfiable, "n below the genus-g minimum");
      return flip_walk_surface(spec.n, spec.genus, spec.seed);
    }
  }
  throw SurfError(ErrorCode::Internal, "unknown condition");
}

GrowthStudy growth_study(const std::string& measure, const std::vector<int>& n_values,
                         int samples_per_n, int genus, uint64_t seed, int threads) {
  GrowthStudy out;
  struct Job {
    int n;
    int idx;
  };
  std::vector<Job> jobs;
  for (int n : n_values)
    for (int i = 0; i < samples_per_n; ++i) jobs.push_back({n, i});
  out.rows.resize(jobs.size());

  auto run_job = [&](size_t j) {
    auto t0 = std::chrono::steady_clock::now();
    const Job& job = jobs[j];
    uint64_t job_seed = SplitMix64(seed ^ (0x9E3779B97F4A7C15ULL * (job.n + 1) + job.idx)).next();
    GrowthRow row;
    row.measure = measure;
    row.n = job.n;
    row.g = genus;
    row.seed = job_seed;
    if (measure == "genus0_multiplicity") {
      // genus-zero surface with `genus` holes (the g column carries b)
      RandomSurfaceSpec spec{job.n, job_seed, SurfaceCondition::GenusExact, 0};
      CrossMetricSurface closed = random_surface(spec);
      // mark b pairwise non-adjacent faces as holes, deterministically
      const CombinatorialMap& m = closed.map();
      SplitMix64 rng(job_seed ^ 0xb0a7ULL);
      std::vector<int32_t> holes;
      std::vector<char> blocked(m.num_faces(), 0);
      int guard = 0;
      while ((int)holes.size() < genus && guard++ < 100000) {
        int32_t f = (int32_t)rng.below(m.num_faces());
        if (blocked[f]) continue;
        bool ok = true;
        for (int32_t d : m.face_orbit(f))
          if (blocked[m.face_of(m.twin(d))]) ok = false;
        if (!ok) continue;
        holes.push_back(f);
        blocked[f] = 1;
        for (int32_t d : m.face_orbit(f)) blocked[m.face_of(m.twin(d))] = 1;
      }
      SURF_CHECK((int)holes.size() == genus, "could not place non-adjacent holes");
      std::vector<int32_t> reps;
      for (int32_t f : holes) reps.push_back(m.face_dart(f));
      CrossMetricSurface holed{CombinatorialMap(m.raw_twin(), m.raw_next(), reps)};
      row.value = pairing_decomposition(holed).max_multiplicity;
    } else {
      RandomSurfaceSpec spec{job.n, job_seed, SurfaceCondition::GenusExact, genus};
      CrossMetricSurface s = random_surface(spec);
      if (measure == "edge_width") {
        row.value = shortest_noncontractible(s).length;
      } else if (measure == "pants_total_length" || measure == "pants_max_curve") {
        PantsDecomposition pd = pants_decomposition(s);
        long long total = 0, mx = 0;
        for (auto& c : pd.curves) {
          total += c.length;
          mx = std::max<long long>(mx, c.length);
        }
        row.value = (measure == "pants_total_length") ? (double)total : (double)mx;
      } else {
        throw SurfError(ErrorCode::UnknownFixture, "unknown measure " + measure);
      }
    }
    row.time_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    out.rows[j] = std::move(row);
  };

  int nthreads = threads > 0 ? threads : (int)std::thread::hardware_concurrency();
  nthreads = std::max(1, std::min<int>(nthreads, (int)jobs.size()));
  if (nthreads <= 1) {
    for (size_t j = 0; j < jobs.size(); ++j) run_job(j);
  } else {
    std::atomic<size_t> cursor{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (size_t j = cursor.fetch_add(1); j < jobs.size(); j = cursor.fetch_add(1)) run_job(j);
      });
    }
    for (auto& th : pool) th.join();
  }

  // least squares of log(median value) against log(n)
  std::vector<double> xs, ys;
  for (int n : n_values) {
    std::vector<double> vals;
    for (auto& r : out.rows)
      if (r.n == n) vals.push_back(r.value);
    if (vals.empty()) continue;
    std::sort(vals.begin(), vals.end());
    double med = vals[vals.size() / 2];
    if (med <= 0) med = 0.5;
    xs.push_back(std::log((double)n));
    ys.push_back(std::log(med));
  }
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0, den = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      num += (xs[i] - mx) * (ys[i] - my);
      den += (xs[i] - mx) * (xs[i] - mx);
    }
    out.loglog_slope = den > 0 ? num / den : 0.0;
  }
  return out;
}

}  // namespace surf
