#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surf/combinatorial_map.hpp"

namespace surf {

// splitmix64: the pinned counter-based generator (cross-platform identical
// streams; state advances by the golden gamma).
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n) by rejection, bias-free
  uint64_t below(uint64_t n) {
    uint64_t mask = ~0ULL;
    if (n == 0) return 0;
    uint64_t limit = mask - mask % n;
    uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }
};

enum class SurfaceCondition { None, Connected, GenusExact, GenusMin };

struct RandomSurfaceSpec {
  int n = 2;  // even vertex count
  uint64_t seed = 0;
  SurfaceCondition condition = SurfaceCondition::Connected;
  int genus = 0;  // for the genus conditions
};

// Configuration-model sample: 3n labeled half-edges, uniformly random
// rotation triple per vertex and uniformly random perfect matching as twin.
// Conditions None/Connected/GenusMin are satisfied by rejection.  GenusExact
// is sampled by rejection only near the maximum genus; far below it the
// typical genus concentrates near (n+2)/4 and rejection is hopeless, so the
// sample is a seeded random walk of edge flips from a canonical genus-g
// surface (genus-preserving moves, not uniform over labeled gluings).
CrossMetricSurface random_surface(const RandomSurfaceSpec& spec);

// One uniformly random gluing with no condition; nullopt if the map is
// disconnected or otherwise invalid (used for distribution tests).
std::optional<CrossMetricSurface> raw_configuration_sample(int n, uint64_t seed);

// A flip step on a trivalent map: contracts a non-loop edge and re-expands
// the 4-valent vertex the other way (dual of a triangulation edge flip).
// Returns false when the chosen edge does not admit the move.
bool try_flip(std::vector<int32_t>& twin, std::vector<int32_t>& next, int32_t edge);

struct GrowthRow {
  std::string measure;
  int n = 0;
  int g = 0;
  uint64_t seed = 0;
  double value = 0.0;
  long long time_ms = 0;
};

struct GrowthStudy {
  std::vector<GrowthRow> rows;
  double loglog_slope = 0.0;  // least squares on medians vs n
};

// measure: edge_width | pants_total_length | pants_max_curve |
// genus0_multiplicity.  Genus is held fixed (GenusExact sampling).
GrowthStudy growth_study(const std::string& measure, const std::vector<int>& n_values,
                         int samples_per_n, int genus, uint64_t seed, int threads = 0);

}  // namespace surf
