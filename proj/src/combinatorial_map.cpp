#include "surf/combinatorial_map.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace surf {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::NotPermutation: return "NotPermutation";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NegativeGenus: return "NegativeGenus";
    case ErrorCode::HasBoundary: return "HasBoundary";
    case ErrorCode::CurveNotSimple: return "CurveNotSimple";
    case ErrorCode::CurvesNotDisjoint: return "CurvesNotDisjoint";
    case ErrorCode::IllegalIntersection: return "IllegalIntersection";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::NoNoncontractibleCurve: return "NoNoncontractibleCurve";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::TangencyPresent: return "TangencyPresent";
    case ErrorCode::NotInSplitState: return "NotInSplitState";
    case ErrorCode::NotInMergeState: return "NotInMergeState";
    case ErrorCode::InitialBoundaryTooLong: return "InitialBoundaryTooLong";
    case ErrorCode::ComponentNotDecomposable: return "ComponentNotDecomposable";
    case ErrorCode::GenusTooSmall: return "GenusTooSmall";
    case ErrorCode::PaperBoundViolated: return "PaperBoundViolated";
    case ErrorCode::WrongGenus: return "WrongGenus";
    case ErrorCode::TooFewBoundaries: return "TooFewBoundaries";
    case ErrorCode::NotGenusZeroDecomposition: return "NotGenusZeroDecomposition";
    case ErrorCode::ConditionUnsatisfiable: return "ConditionUnsatisfiable";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::BadFile: return "BadFile";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

CombinatorialMap::CombinatorialMap(std::vector<int32_t> twin, std::vector<int32_t> next,
                                   std::vector<int32_t> boundary_face_reps)
    : twin_(std::move(twin)), next_(std::move(next)) {
  const int h = (int)twin_.size();
  if (h == 0 || h % 2 != 0 || next_.size() != twin_.size())
    throw SurfError(ErrorCode::NotPermutation, "dart arrays must have equal even nonzero length");

  // twin: fixed-point-free involution pairing 2i with 2i+1
  for (int32_t d = 0; d < h; ++d) {
    if (twin_[d] < 0 || twin_[d] >= h || twin_[d] == d)
      throw SurfError(ErrorCode::NotInvolution, "twin has a fixed point or out-of-range entry");
    if (twin_[twin_[d]] != d)
      throw SurfError(ErrorCode::NotInvolution, "twin is not an involution");
    if (twin_[d] != (d ^ 1))
      throw SurfError(ErrorCode::NotInvolution, "twin must pair dart 2i with 2i+1");
  }

  // next: permutation
  prev_.assign(h, -1);
  for (int32_t d = 0; d < h; ++d) {
    if (next_[d] < 0 || next_[d] >= h)
      throw SurfError(ErrorCode::NotPermutation, "next entry out of range");
    if (prev_[next_[d]] != -1)
      throw SurfError(ErrorCode::NotPermutation, "next is not injective");
    prev_[next_[d]] = d;
  }

  // vertex orbits: orbits of next
  vertex_of_.assign(h, -1);
  for (int32_t d = 0; d < h; ++d) {
    if (vertex_of_[d] != -1) continue;
    int32_t v = num_vertices_++;
    vertex_dart_.push_back(d);
    int deg = 0;
    for (int32_t e = d; vertex_of_[e] == -1; e = next_[e]) {
      vertex_of_[e] = v;
      ++deg;
    }
    vertex_degree_.push_back(deg);
  }

  // face orbits: orbits of next o twin
  face_of_.assign(h, -1);
  for (int32_t d = 0; d < h; ++d) {
    if (face_of_[d] != -1) continue;
    int32_t f = num_faces_++;
    face_dart_.push_back(d);
    int deg = 0;
    for (int32_t e = d; face_of_[e] == -1; e = next_[twin_[e]]) {
      face_of_[e] = f;
      ++deg;
    }
    face_degree_.push_back(deg);
  }

  // connectivity over dart adjacency (twin + next)
  {
    std::vector<char> seen(h, 0);
    std::vector<int32_t> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int32_t d = stack.back();
      stack.pop_back();
      for (int32_t e : {twin_[d], next_[d]}) {
        if (!seen[e]) {
          seen[e] = 1;
          ++count;
          stack.push_back(e);
        }
      }
    }
    if (count != h) throw SurfError(ErrorCode::Disconnected, "map is not connected");
  }

  // boundary faces
  hole_flag_.assign(num_faces_, 0);
  for (int32_t rep : boundary_face_reps) {
    if (rep < 0 || rep >= h) throw SurfError(ErrorCode::BadFile, "boundary dart out of range");
    int32_t f = face_of_[rep];
    if (!hole_flag_[f]) {
      hole_flag_[f] = 1;
      hole_faces_.push_back(f);
    }
  }
  std::sort(hole_faces_.begin(), hole_faces_.end());

  // Euler characteristic: v - e + f_interior = 2 - 2g - b
  const int b = (int)hole_faces_.size();
  const int chi_closed = num_vertices_ - h / 2 + num_faces_;
  if (chi_closed > 2 || chi_closed % 2 != 0)
    throw SurfError(ErrorCode::NegativeGenus, "Euler characteristic inconsistent");
  genus_ = (2 - chi_closed) / 2;
  (void)b;

  boundary_vertex_.assign(num_vertices_, 0);
  boundary_edge_.assign(h / 2, 0);
  for (int32_t d = 0; d < h; ++d) {
    if (hole_flag_[face_of_[d]]) {
      boundary_vertex_[vertex_of_[d]] = 1;
      boundary_edge_[d / 2] = 1;
    }
  }
  num_interior_vertices_ = 0;
  for (int32_t v = 0; v < num_vertices_; ++v)
    if (!boundary_vertex_[v]) ++num_interior_vertices_;
}

std::vector<int32_t> CombinatorialMap::vertex_orbit(int32_t v) const {
  std::vector<int32_t> out;
  int32_t d0 = vertex_dart_[v];
  int32_t d = d0;
  do {
    out.push_back(d);
    d = next_[d];
  } while (d != d0);
  return out;
}

std::vector<int32_t> CombinatorialMap::face_orbit(int32_t f) const {
  std::vector<int32_t> out;
  int32_t d0 = face_dart_[f];
  int32_t d = d0;
  do {
    out.push_back(d);
    d = face_next(d);
  } while (d != d0);
  return out;
}

SurfaceClass classify(const CombinatorialMap& m) {
  SurfaceClass c;
  c.genus = m.genus();
  c.boundaries = m.num_boundaries();
  c.is_disk = (c.genus == 0 && c.boundaries == 1);
  c.is_annulus = (c.genus == 0 && c.boundaries == 2);
  c.is_pants = (c.genus == 0 && c.boundaries == 3);
  c.is_sphere = (c.genus == 0 && c.boundaries == 0);
  c.is_torus = (c.genus == 1 && c.boundaries == 0);
  return c;
}

Triangulation::Triangulation(CombinatorialMap map) : map_(std::move(map)) {
  n_ = 0;
  for (int32_t f = 0; f < map_.num_faces(); ++f) {
    if (map_.is_hole(f)) continue;
    if (map_.face_degree(f) != 3)
      throw SurfError(ErrorCode::BadFile, "triangulation has a non-triangle interior face");
    ++n_;
  }
  if (map_.num_boundaries() == 0) {
    // n = 2v + 4g - 4, forced by Euler's formula and double counting
    SURF_CHECK(n_ == 2 * map_.num_vertices() + 4 * map_.genus() - 4,
               "triangle count violates n = 2v + 4g - 4");
  }
}

CrossMetricSurface::CrossMetricSurface(CombinatorialMap map) : map_(std::move(map)) {
  for (int32_t v = 0; v < map_.num_vertices(); ++v) {
    if (map_.vertex_degree(v) != 3)
      throw SurfError(ErrorCode::BadFile, "cross-metric surface must be trivalent");
  }
  if (map_.num_boundaries() == 0) {
    SURF_CHECK(map_.num_vertices() % 2 == 0, "trivalent map needs an even vertex count");
    SURF_CHECK(map_.num_edges() == 3 * map_.num_vertices() / 2, "edge count must be 3n/2");
  }
}

CombinatorialMap dual_map(const CombinatorialMap& m) {
  if (m.num_boundaries() > 0)
    throw SurfError(ErrorCode::HasBoundary, "dual is defined for maps without boundary");
  const int h = m.num_darts();
  std::vector<int32_t> twin(h), next(h);
  for (int32_t d = 0; d < h; ++d) {
    twin[d] = m.twin(d);
    next[d] = m.face_next(d);  // rotation around the dual vertex = face orbit
  }
  return CombinatorialMap(std::move(twin), std::move(next));
}

CrossMetricSurface dualize(const Triangulation& t) {
  return CrossMetricSurface(dual_map(t.map()));
}

Triangulation primal_triangulation(const CrossMetricSurface& s) {
  return Triangulation(dual_map(s.map()));
}

CombinatorialMap map_from_faces(int num_vertices, const std::vector<std::vector<int>>& faces) {
  // Works for simple graphs only: each undirected edge shared by exactly two
  // faces, traversed in opposite directions (consistent orientation).
  (void)num_vertices;
  std::map<std::pair<int, int>, int32_t> dart_of_dir;  // (tail, head) -> dart
  int total = 0;
  for (auto& f : faces) total += (int)f.size();
  std::vector<int32_t> twin(total, -1), next(total, -1);

  int32_t fresh = 0;
  std::vector<std::vector<int32_t>> face_darts(faces.size());
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    const auto& poly = faces[fi];
    SURF_CHECK(poly.size() >= 1, "empty face");
    for (size_t k = 0; k < poly.size(); ++k) {
      int a = poly[k], b = poly[(k + 1) % poly.size()];
      SURF_CHECK(!dart_of_dir.count({a, b}),
                 "directed edge repeated; faces not consistently oriented or graph not simple");
      auto rit = dart_of_dir.find({b, a});
      int32_t d;
      if (rit != dart_of_dir.end()) {
        d = rit->second ^ 1;  // twin slot of the reverse dart
      } else {
        d = fresh;
        fresh += 2;
      }
      dart_of_dir[{a, b}] = d;
      face_darts[fi].push_back(d);
    }
  }
  SURF_CHECK(fresh == total, "every edge must be shared by exactly two faces");
  for (int32_t d = 0; d < total; ++d) twin[d] = d ^ 1;

  // Consecutive darts d, d' along a face satisfy face_next(d) = next[twin[d]] = d'.
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    const auto& fd = face_darts[fi];
    for (size_t k = 0; k < fd.size(); ++k) {
      next[twin[fd[k]]] = fd[(k + 1) % fd.size()];
    }
  }
  return CombinatorialMap(std::move(twin), std::move(next));
}

}  // namespace surf
