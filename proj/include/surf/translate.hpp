#pragma once
#include "surf/combinatorial_map.hpp"
#include "surf/curve_ops.hpp"
#include "surf/io.hpp"

namespace surf {

// Length in the singular metric that gives every triangle the geometry of a
// unit-area equilateral triangle (side length 2/3^(1/4)).
struct EquilateralLength {
  double value = 0.0;
};

// |w|_G edges each of side length 2/3^(1/4).
EquilateralLength equilateral_length(const PrimalWalk& w);

// Snaps a regular-position curve on dualize(t) to a homotopic closed walk in
// the primal graph: each crossing contributes the traversal of its primal
// edge, consecutive zone visits connect at the shared vertex, and backtracks
// are cancelled to a fixpoint.  Guarantees |walk|_G <= 2 |c|_{G*} (this
// construction achieves <= |c|_{G*}) and preserves the Z2 homology class.
PrimalWalk snap_to_primal(const Triangulation& t, const CrossCurve& c);

}  // namespace surf
