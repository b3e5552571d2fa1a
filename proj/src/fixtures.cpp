#include "surf/fixtures.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace surf {

CombinatorialMap map_from_rotations(const std::vector<std::vector<int>>& rot) {
  std::map<std::pair<int, int>, int32_t> dart;  // (tail, head) -> dart id
  int32_t fresh = 0;
  for (int u = 0; u < (int)rot.size(); ++u) {
    for (int v : rot[u]) {
      if (dart.count({u, v})) throw SurfError(ErrorCode::BadFile, "rotation graph not simple");
      auto rit = dart.find({v, u});
      dart[{u, v}] = (rit != dart.end()) ? (rit->second ^ 1) : (fresh += 2) - 2;
    }
  }
  std::vector<int32_t> twin(fresh), next(fresh, -1);
  for (int32_t d = 0; d < fresh; ++d) twin[d] = d ^ 1;
  for (int u = 0; u < (int)rot.size(); ++u) {
    for (size_t k = 0; k < rot[u].size(); ++k) {
      next[dart[{u, rot[u][k]}]] = dart[{u, rot[u][(k + 1) % rot[u].size()]}];
    }
  }
  return CombinatorialMap(std::move(twin), std::move(next));
}

Triangulation tetrahedron() {
  return Triangulation(map_from_faces(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}}));
}

Triangulation octahedron() {
  return Triangulation(map_from_faces(6, {{0, 1, 2},
                                          {0, 2, 3},
                                          {0, 3, 4},
                                          {0, 4, 1},
                                          {5, 2, 1},
                                          {5, 3, 2},
                                          {5, 4, 3},
                                          {5, 1, 4}}));
}

Triangulation k7_torus() {
  // Classic triangular embedding of K7: rotation i -> i + (1, 3, 2, 6, 4, 5).
  std::vector<std::vector<int>> rot(7);
  const int offs[6] = {1, 3, 2, 6, 4, 5};
  for (int i = 0; i < 7; ++i)
    for (int o : offs) rot[i].push_back((i + o) % 7);
  CombinatorialMap m = map_from_rotations(rot);
  SURF_CHECK(m.genus() == 1 && m.num_faces() == 14, "K7 rotation must embed on the torus");
  return Triangulation(std::move(m));
}

Triangulation grid_torus(int w, int h) {
  if (w < 3 || h < 3) throw SurfError(ErrorCode::UnknownFixture, "grid-torus needs w,h >= 3");
  auto id = [&](int x, int y) { return ((y % h + h) % h) * w + ((x % w + w) % w); };
  std::vector<std::vector<int>> faces;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      faces.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
      faces.push_back({id(x, y), id(x + 1, y + 1), id(x, y + 1)});
    }
  }
  return Triangulation(map_from_faces(w * h, faces));
}

Triangulation canonical_genus(int g) {
  if (g < 1) throw SurfError(ErrorCode::UnknownFixture, "canonical genus needs g >= 1");
  // Triangulated 4g-gon from a center vertex; polygon sides identified by the
  // word a1 b1 a1^-1 b1^-1 ... ; all corners collapse to one vertex.
  // Edge ids: sides 0..2g-1, spokes 2g..2g+4g-1.
  const int sides = 4 * g;
  auto side_dart = [&](int i) -> int32_t {
    int k = i / 4, r = i % 4;
    int eid = (r % 2 == 0) ? 2 * k : 2 * k + 1;
    int dir = (r < 2) ? 0 : 1;
    return 2 * eid + dir;
  };
  auto spoke_dart = [&](int i, int dir) -> int32_t { return 2 * (2 * g + i) + dir; };

  const int total = 2 * (2 * g + sides);
  std::vector<int32_t> twin(total), next(total, -1);
  for (int32_t d = 0; d < total; ++d) twin[d] = d ^ 1;
  for (int i = 0; i < sides; ++i) {
    // Triangle i: side_i (p_i -> p_{i+1}), spoke_{i+1} (p -> c), spoke_i (c -> p).
    int32_t f0 = side_dart(i);
    int32_t f1 = spoke_dart((i + 1) % sides, 0);
    int32_t f2 = spoke_dart(i, 1);
    next[twin[f0]] = f1;
    next[twin[f1]] = f2;
    next[twin[f2]] = f0;
  }
  CombinatorialMap m(std::move(twin), std::move(next));
  SURF_CHECK(m.genus() == g, "canonical polygon gluing must have genus g");
  return Triangulation(std::move(m));
}

Triangulation glued_k7() {
  Triangulation k7 = k7_torus();
  const CombinatorialMap& m = k7.map();
  // Pick the face containing dart 0 and cut it out of both copies.
  std::vector<int32_t> orbit = m.face_orbit(m.face_of(0));
  SURF_CHECK(orbit.size() == 3, "K7 faces are triangles");
  std::array<int, 3> fv{};
  for (int k = 0; k < 3; ++k) fv[k] = m.vertex_of(orbit[k]);

  std::vector<std::vector<int>> faces_a;
  for (int32_t f = 0; f < m.num_faces(); ++f) {
    if (f == m.face_of(0)) continue;
    std::vector<int> poly;
    for (int32_t d : m.face_orbit(f)) poly.push_back(m.vertex_of(d));
    faces_a.push_back(poly);
  }

  // Copy B is mirrored so the glued surface is orientable; its glued-triangle
  // vertices map onto copy A's, the rest get fresh labels.  Try the three
  // rotations of the matching until validation succeeds.
  for (int rotshift = 0; rotshift < 3; ++rotshift) {
    std::vector<int> rename(7, -1);
    for (int k = 0; k < 3; ++k) rename[fv[k]] = fv[(k + rotshift) % 3];
    int fresh = 7;
    for (int v = 0; v < 7; ++v)
      if (rename[v] == -1) rename[v] = fresh++;
    std::vector<std::vector<int>> faces = faces_a;
    for (auto& poly : faces_a) {
      std::vector<int> mirrored;
      for (auto it = poly.rbegin(); it != poly.rend(); ++it) mirrored.push_back(rename[*it]);
      faces.push_back(mirrored);
    }
    try {
      CombinatorialMap glued = map_from_faces(11, faces);
      if (glued.genus() == 2) return Triangulation(std::move(glued));
    } catch (const SurfError&) {
      // try the next rotation of the gluing
    }
  }
  throw SurfError(ErrorCode::Internal, "no orientable gluing of two K7 tori found");
}

Triangulation fixture_by_name(const std::string& name) {
  if (name == "tetrahedron") return tetrahedron();
  if (name == "octahedron") return octahedron();
  if (name == "k7-torus") return k7_torus();
  if (name == "glued-k7") return glued_k7();
  if (name.rfind("grid-torus(", 0) == 0 && name.back() == ')') {
    auto body = name.substr(11, name.size() - 12);
    auto comma = body.find(',');
    if (comma != std::string::npos) {
      int w = std::stoi(body.substr(0, comma));
      int h = std::stoi(body.substr(comma + 1));
      return grid_torus(w, h);
    }
  }
  if (name.rfind("genus(", 0) == 0 && name.find(")-canonical") != std::string::npos) {
    int g = std::stoi(name.substr(6, name.find(')') - 6));
    return canonical_genus(g);
  }
  throw SurfError(ErrorCode::UnknownFixture, name);
}

}  // namespace surf
