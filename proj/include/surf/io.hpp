#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "surf/combinatorial_map.hpp"

namespace surf {

// A closed curve on a cross-metric surface as its crossing sequence only.
// Crossing i is the dart entered: the curve crosses edge_of(dart) and the arc
// after the crossing lies in the face left of the dart (face_of(dart)).
struct CrossCurve {
  std::vector<int32_t> crossings;  // dart ids, cyclic
  int length() const { return (int)crossings.size(); }
};

// .cmap text format:
//   cmap 1 <num_halfedges> <num_boundary_faces>
//   <id> <twin> <next>            (one line per half-edge, ids 0-based)
//   <incident half-edge>          (one line per boundary face)
void write_cmap(std::ostream& os, const CombinatorialMap& m);
CombinatorialMap read_cmap(std::istream& is);
void write_cmap_file(const std::string& path, const CombinatorialMap& m);
CombinatorialMap read_cmap_file(const std::string& path);

// .curves text format:
//   curves 1 <k>
//   <length> <dual-edge id> <side bit> ...   (one line per curve)
// The side bit selects the entered half-edge: dart = 2*edge + bit.
void write_curves(std::ostream& os, const std::vector<CrossCurve>& curves);
std::vector<CrossCurve> read_curves(std::istream& is);
void write_curves_file(const std::string& path, const std::vector<CrossCurve>& curves);
std::vector<CrossCurve> read_curves_file(const std::string& path);

}  // namespace surf
