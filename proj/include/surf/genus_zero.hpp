#pragma once
#include <cstdint>
#include <vector>

#include "surf/arrangement.hpp"
#include "surf/combinatorial_map.hpp"
#include "surf/cut.hpp"
#include "surf/io.hpp"

namespace surf {

// Spanning structure of the boundary components of a genus-zero surface: a
// tree of multiplicity one in the face adjacency graph whose leaves touch
// each hole exactly once, plus the traversal order of the holes along the
// path p that follows the tree (p has multiplicity two).
struct BoundaryTree {
  std::vector<int32_t> tree_edges;    // G* edge ids, each crossed once by T
  std::vector<int32_t> hole_order;    // hole faces B_1..B_b in order along p
  // tree structure on the face graph: parent face/edge per face (-1 at root)
  std::vector<int32_t> parent_face, parent_edge;
};

BoundaryTree boundary_tree(const CrossMetricSurface& s);

// Maximum number of crossings between one G* edge and the whole system.
int multiplicity(const CrossMetricSurface& s, const std::vector<CrossCurve>& curves);

struct PairingDecomposition {
  std::vector<CrossCurve> curves;  // b-3 disjoint simple closed curves
  std::vector<int> lengths;
  int max_multiplicity = 0;
  int total_length = 0;
  BoundaryTree tree;
};

// Appendix-B pairing construction: groups boundary components by pairs along
// p and reiterates; each edge of G* ends up with O(log b) crossings.
PairingDecomposition pairing_decomposition(const CrossMetricSurface& s);

struct GenusZeroCompletion {
  std::vector<CrossCurve> all_curves;  // input system + the added curves, on s
  std::vector<int> lengths;
  int added = 0;
  int max_multiplicity_added = 0;
  long long total_length = 0;
};

// Completes a genus-zero decomposition (disjoint simple curves whose
// complement is a connected genus-zero surface with 2g boundaries) to a full
// pants decomposition by pairing the cut surface's holes.
GenusZeroCompletion complete_genus_zero(const CrossMetricSurface& s,
                                        const std::vector<CrossCurve>& genus_zero_system);

}  // namespace surf
