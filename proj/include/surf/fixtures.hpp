#pragma once
#include <string>

#include "surf/combinatorial_map.hpp"

namespace surf {

// Deterministic fixture surfaces used by the test suite and the `gen` command.
Triangulation tetrahedron();
Triangulation octahedron();
Triangulation k7_torus();
Triangulation grid_torus(int w, int h);  // w, h >= 3
// Triangulated 4g-gon with the a b a^-1 b^-1 ... identification: v=2, n=4g.
Triangulation canonical_genus(int g);
// Two copies of the K7 torus glued along a removed triangle: genus 2.
Triangulation glued_k7();

// Build a map from per-vertex rotations (cyclic neighbor lists); simple graphs.
CombinatorialMap map_from_rotations(const std::vector<std::vector<int>>& rot);

// Named lookup for the CLI: tetrahedron | octahedron | k7-torus |
// grid-torus(w,h) | genus(g)-canonical | glued-k7.
Triangulation fixture_by_name(const std::string& name);

}  // namespace surf
