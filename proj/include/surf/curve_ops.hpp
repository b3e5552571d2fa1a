#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "surf/arrangement.hpp"
#include "surf/combinatorial_map.hpp"
#include "surf/io.hpp"

namespace surf {

// A closed walk in the primal graph of a triangulation: cyclic sequence of
// directed primal edges (darts of the triangulation's map), consecutive darts
// sharing a vertex.  Length |c|_G = number of edges traversed.
struct PrimalWalk {
  std::vector<int32_t> darts;
  int length() const { return (int)darts.size(); }
};

// Census of one side explored by the tandem search.
struct RegionCensus {
  bool complete = false;   // flood closed without touching the other side
  bool is_disk = false;    // complete, Euler characteristic 1, no hole inside
  bool touched_hole = false;
  int faces = 0;
  int interior_vertices = 0;  // vertices strictly inside (crossings excluded)
  long long euler = 0;
};

struct TandemResult {
  bool contractible = false;
  std::optional<RegionCensus> disk;  // the disk side when contractible
};

// Tandem (lockstep, one face per side per step) exploration of the two sides
// of a live simple curve in the arrangement.  Other curves are transparent:
// their arcs subdivide faces but do not block the flood.  Cost is bounded by
// twice the smaller side when a disk exists.  Ties count as disk found.
TandemResult tandem_contractibility(const Arrangement& arr, int curve_id);

// Spec operations on standalone curves (realized via a fresh overlay).
bool is_contractible(const CrossMetricSurface& s, const CrossCurve& c);
bool is_separating(const CrossMetricSurface& s, const CrossCurve& c);
bool annulus_equivalent(const CrossMetricSurface& s, const CrossCurve& c1, const CrossCurve& c2);

// Z2 homology class in a fixed deterministic tree-cotree basis (dimension 2g,
// surfaces without boundary).  Component x = crossing parity with the
// fundamental loop of the x-th leftover edge; zero vector iff null-homologous.
std::vector<uint8_t> homology_class_z2(const CrossMetricSurface& s, const CrossCurve& c);
std::vector<uint8_t> homology_class_z2(const Triangulation& t, const PrimalWalk& w);

class CurveSystem;  // defined in cut.hpp context

// Overlay construction for a set of disjoint simple curves; the canonical
// realization routes each crossing through the first admissible segment.
// Throws IllegalIntersection when the sequences force a crossing.
struct Overlay {
  explicit Overlay(const CrossMetricSurface& s) : arr(s) {}
  Arrangement arr;
  std::vector<int> curve_ids;
};
Overlay overlay(const CrossMetricSurface& s, const std::vector<CrossCurve>& curves);

}  // namespace surf
