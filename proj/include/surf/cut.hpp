#pragma once
#include <cstdint>
#include <vector>

#include "surf/arrangement.hpp"
#include "surf/combinatorial_map.hpp"

namespace surf {

// One component of a cut, with correspondence tables back to the arrangement
// it was cut from.
struct CutComponent {
  CrossMetricSurface surface;
  // per dart of `surface`: the arrangement dart it descends from (-1 for the
  // doubled curve-copy darts forming the new boundary cycles)
  std::vector<int32_t> parent_dart;
  // per dart: the dart of the base surface it is parallel to (-1 on copies);
  // composing these tables walks a cut cascade back to the root surface
  std::vector<int32_t> base_dart;
  // per hole face of `surface` (parallel to surface.map().hole_faces()):
  // the cutting curve id that created it, or -1 for an inherited hole
  std::vector<int> hole_curve;
  // for inherited holes: the base surface's hole face id (-1 otherwise)
  std::vector<int32_t> hole_base_face;
  // interior vertex ids mapped to arrangement vertex ids
  std::vector<int32_t> vertex_parent;
};

struct CutResult {
  std::vector<CutComponent> components;
};

// Cuts the arrangement's surface along the given curves (disjoint, simple,
// live, and crossing only graph segments).  The arrangement itself is left
// untouched; components are fresh maps with boundary.
CutResult cut_along(const Arrangement& arr, const std::vector<int>& curve_ids);

// Spec-level convenience: cut a cross-metric surface along a realized system.
CutResult cut_along(const CrossMetricSurface& s, const std::vector<CrossCurve>& curves);

}  // namespace surf
