#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surf/errors.hpp"

namespace surf {

// Half-edge (dart) encoding of a graph cellularly embedded on an orientable
// surface, with or without boundary.
//
// Conventions, used consistently by every module:
//   - darts are dense indices 0..h-1; dart 2i and 2i+1 form edge i,
//     twin(2i) = 2i+1 is required at construction time;
//   - next(h) is the clockwise rotation around the origin vertex of h;
//   - face orbits are orbits of h -> next(twin(h)); the orbit of h walks the
//     boundary of the face lying to the LEFT of h, counterclockwise;
//   - boundary is a set of faces marked as holes; a hole contributes one
//     boundary component and is not an interior face.
//
// Maps are immutable once validated.
class CombinatorialMap {
public:
  // Validates and caches orbits.  Throws SurfError with code NotInvolution,
  // NotPermutation, Disconnected or NegativeGenus.
  CombinatorialMap(std::vector<int32_t> twin, std::vector<int32_t> next,
                   std::vector<int32_t> boundary_face_reps = {});

  int num_darts() const { return (int)twin_.size(); }
  int num_edges() const { return (int)twin_.size() / 2; }
  int num_vertices() const { return num_vertices_; }
  int num_faces() const { return num_faces_; }           // holes included
  int num_interior_faces() const { return num_faces_ - (int)hole_faces_.size(); }
  int num_boundaries() const { return (int)hole_faces_.size(); }
  int genus() const { return genus_; }

  int32_t twin(int32_t d) const { return twin_[d]; }
  int32_t next(int32_t d) const { return next_[d]; }
  int32_t prev(int32_t d) const { return prev_[d]; }
  int32_t face_next(int32_t d) const { return next_[twin_[d]]; }
  int32_t edge_of(int32_t d) const { return d / 2; }
  int32_t dart_of_edge(int32_t e, int side) const { return 2 * e + side; }

  int32_t vertex_of(int32_t d) const { return vertex_of_[d]; }
  int32_t face_of(int32_t d) const { return face_of_[d]; }
  int32_t vertex_dart(int32_t v) const { return vertex_dart_[v]; }
  int32_t face_dart(int32_t f) const { return face_dart_[f]; }
  int vertex_degree(int32_t v) const { return vertex_degree_[v]; }
  int face_degree(int32_t f) const { return face_degree_[f]; }

  bool is_hole(int32_t f) const { return hole_flag_[f]; }
  const std::vector<int32_t>& hole_faces() const { return hole_faces_; }
  // Vertices incident to a hole face are boundary vertices.
  bool is_boundary_vertex(int32_t v) const { return boundary_vertex_[v]; }
  // Edges on a hole face boundary may not be crossed by curves.
  bool is_boundary_edge(int32_t e) const { return boundary_edge_[e]; }
  int num_interior_vertices() const { return num_interior_vertices_; }

  // All darts of the vertex orbit of v / face orbit of f, in rotation order.
  std::vector<int32_t> vertex_orbit(int32_t v) const;
  std::vector<int32_t> face_orbit(int32_t f) const;

  const std::vector<int32_t>& raw_twin() const { return twin_; }
  const std::vector<int32_t>& raw_next() const { return next_; }

  bool operator==(const CombinatorialMap& o) const {
    return twin_ == o.twin_ && next_ == o.next_ && hole_faces_ == o.hole_faces_;
  }

private:
  std::vector<int32_t> twin_, next_, prev_;
  std::vector<int32_t> vertex_of_, face_of_;
  std::vector<int32_t> vertex_dart_, face_dart_;
  std::vector<int32_t> vertex_degree_, face_degree_;
  std::vector<int32_t> hole_faces_;
  std::vector<char> hole_flag_, boundary_vertex_, boundary_edge_;
  int num_vertices_ = 0, num_faces_ = 0, genus_ = 0, num_interior_vertices_ = 0;
};

// Classification flags per (genus, boundary count).
struct SurfaceClass {
  int genus = 0;
  int boundaries = 0;
  bool is_disk = false;     // (0,1)
  bool is_annulus = false;  // (0,2)
  bool is_pants = false;    // (0,3)
  bool is_sphere = false;   // (0,0)
  bool is_torus = false;    // (1,0)
};

SurfaceClass classify(const CombinatorialMap& m);

// A triangulation: every interior face has degree 3.  n is the triangle count.
class Triangulation {
public:
  explicit Triangulation(CombinatorialMap map);
  const CombinatorialMap& map() const { return map_; }
  int n() const { return n_; }
  int genus() const { return map_.genus(); }

private:
  CombinatorialMap map_;
  int n_;
};

// A cross-metric surface: every vertex has degree 3.  n is the vertex count;
// curves live in regular position and their length counts edge crossings.
class CrossMetricSurface {
public:
  explicit CrossMetricSurface(CombinatorialMap map);
  const CombinatorialMap& map() const { return map_; }
  int n() const { return map_.num_vertices(); }
  int interior_n() const { return map_.num_interior_vertices(); }
  int genus() const { return map_.genus(); }
  int boundaries() const { return map_.num_boundaries(); }

private:
  CombinatorialMap map_;
};

// Generic dual: vertices <-> faces.  dual_next = next o twin, dual_twin = twin.
// With our conventions this is an exact involution on dart labels.
CombinatorialMap dual_map(const CombinatorialMap& m);

// Spec operation: dual of a boundaryless triangulation, a trivalent map.
CrossMetricSurface dualize(const Triangulation& t);
// Reverse direction, for cross-metric surfaces whose faces are all triangles'
// duals (i.e. any trivalent map without boundary).
Triangulation primal_triangulation(const CrossMetricSurface& s);

// Build a map from oriented polygon faces (vertex index lists).  Each edge
// must appear exactly twice, in opposite directions, over all faces.
CombinatorialMap map_from_faces(int num_vertices,
                                const std::vector<std::vector<int>>& faces);

}  // namespace surf
