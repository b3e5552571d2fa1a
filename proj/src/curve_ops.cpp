#include "surf/curve_ops.hpp"

#include <algorithm>
#include <deque>

#include "surf/cut.hpp"

namespace surf {

namespace {

// Flood state for one side of the tandem search.
struct Flood {
  std::deque<int32_t> frontier;  // anchor darts of faces to expand
  RegionCensus census;
  bool done = false;
};

}  // namespace

TandemResult tandem_contractibility(const Arrangement& arr, int curve_id) {
  SURF_CHECK(arr.curve_live(curve_id), "tandem: curve not live");
  const int slots = arr.num_dart_slots();
  // 0 = unseen, 1 = left, 2 = right
  std::vector<uint8_t> mark(slots, 0);
  std::vector<uint8_t> vseen(arr.num_vertex_slots(), 0);
  std::vector<int32_t> arcs = arr.curve_arcs(curve_id);

  Flood side[2];
  for (int32_t a : arcs) {
    side[0].frontier.push_back(a);             // face left of the arc
    side[1].frontier.push_back(arr.twin(a));   // face right of the arc
  }

  auto arc_of_curve = [&](int32_t d) {
    return arr.is_curve(d) && arr.owner(d) == curve_id;
  };

  bool collision = false;
  // expand one face; returns false on collision with the other side
  auto expand = [&](int s) -> bool {
    Flood& F = side[s];
    while (!F.frontier.empty()) {
      int32_t anchor = F.frontier.front();
      F.frontier.pop_front();
      if (mark[anchor] == s + 1) continue;  // face already ours
      if (mark[anchor] != 0) return false;  // other side got here: one region
      if (arr.face_is_hole(anchor)) {
        F.census.touched_hole = true;
        continue;
      }
      // walk the face orbit, claim it
      int32_t d = anchor;
      do {
        if (mark[d] != 0 && mark[d] != s + 1) return false;
        if (mark[d] == 0) {
          mark[d] = (uint8_t)(s + 1);
          if (mark[arr.twin(d)] != s + 1) {
            F.census.euler -= 1;  // first dart of this edge seen by us
          }
          int32_t v = arr.origin(d);
          uint8_t bit = (uint8_t)(1 << s);
          if (!(vseen[v] & bit)) {
            vseen[v] = (uint8_t)(vseen[v] | bit);
            F.census.euler += 1;
            if (arr.vertex_kind(v) == Arrangement::VertexKind::Graph)
              F.census.interior_vertices += 1;
          }
          // enqueue the neighbor face unless the edge is our own curve
          if (!arc_of_curve(d)) F.frontier.push_back(arr.twin(d));
        }
        d = arr.face_next(d);
        arr.add_ops(1);
      } while (d != anchor);
      F.census.faces += 1;
      F.census.euler += 1;
      return true;  // expanded exactly one face
    }
    F.done = true;
    F.census.complete = true;
    return true;
  };

  TandemResult result;
  while (true) {
    for (int s : {0, 1}) {
      if (side[s].done) continue;
      if (!expand(s)) {
        collision = true;
        break;
      }
      if (side[s].done) {
        RegionCensus& c = side[s].census;
        c.is_disk = (!c.touched_hole && c.euler == 1);
        if (c.is_disk) {
          result.contractible = true;
          result.disk = c;
          return result;
        }
      }
    }
    if (collision) break;
    if (side[0].done && side[1].done) break;
  }
  result.contractible = false;
  return result;
}

Overlay overlay(const CrossMetricSurface& s, const std::vector<CrossCurve>& curves) {
  Overlay ov(s);
  for (const CrossCurve& c : curves) ov.curve_ids.push_back(ov.arr.insert_cross_curve(c));
  return ov;
}

bool is_contractible(const CrossMetricSurface& s, const CrossCurve& c) {
  if (c.crossings.empty()) return true;  // lies inside one face, a disk
  Overlay ov = overlay(s, {c});
  return tandem_contractibility(ov.arr, ov.curve_ids[0]).contractible;
}

bool is_separating(const CrossMetricSurface& s, const CrossCurve& c) {
  if (c.crossings.empty()) return true;
  Overlay ov = overlay(s, {c});
  CutResult cut = cut_along(ov.arr, ov.curve_ids);
  return cut.components.size() == 2;
}

bool annulus_equivalent(const CrossMetricSurface& s, const CrossCurve& c1, const CrossCurve& c2) {
  Overlay ov(s);
  try {
    ov.curve_ids.push_back(ov.arr.insert_cross_curve(c1));
    ov.curve_ids.push_back(ov.arr.insert_cross_curve(c2));
  } catch (const SurfError& e) {
    if (e.code() == ErrorCode::IllegalIntersection)
      throw SurfError(ErrorCode::CurvesNotDisjoint, "curves are not disjoint here");
    throw;
  }
  CutResult cut = cut_along(ov.arr, ov.curve_ids);
  for (const CutComponent& comp : cut.components) {
    SurfaceClass cls = classify(comp.surface.map());
    if (!cls.is_annulus) continue;
    const auto& hc = comp.hole_curve;
    if (hc.size() == 2 && ((hc[0] == ov.curve_ids[0] && hc[1] == ov.curve_ids[1]) ||
                           (hc[0] == ov.curve_ids[1] && hc[1] == ov.curve_ids[0])))
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Z2 homology via a deterministic tree-cotree basis on G*.

namespace {

struct TreeCotree {
  std::vector<int32_t> leftover;            // the 2g edges outside tree and cotree
  std::vector<std::vector<uint64_t>> mask;  // per edge: membership in the 2g loops
  int words = 0;
};

TreeCotree build_tree_cotree(const CombinatorialMap& m) {
  const int E = m.num_edges();
  std::vector<char> in_tree(E, 0), in_cotree(E, 0);
  // BFS spanning tree of G* from vertex 0, edges scanned in dart order
  {
    std::vector<char> seen(m.num_vertices(), 0);
    std::deque<int32_t> q{0};
    seen[0] = 1;
    while (!q.empty()) {
      int32_t v = q.front();
      q.pop_front();
      for (int32_t d : m.vertex_orbit(v)) {
        int32_t u = m.vertex_of(m.twin(d));
        if (!seen[u]) {
          seen[u] = 1;
          in_tree[m.edge_of(d)] = 1;
          q.push_back(u);
        }
      }
    }
  }
  // BFS spanning tree of the dual (faces), avoiding tree edges
  {
    std::vector<char> seen(m.num_faces(), 0);
    std::deque<int32_t> q{0};
    seen[0] = 1;
    while (!q.empty()) {
      int32_t f = q.front();
      q.pop_front();
      for (int32_t d : m.face_orbit(f)) {
        if (in_tree[m.edge_of(d)]) continue;
        int32_t g = m.face_of(m.twin(d));
        if (!seen[g]) {
          seen[g] = 1;
          in_cotree[m.edge_of(d)] = 1;
          q.push_back(g);
        }
      }
    }
  }
  TreeCotree tc;
  for (int32_t e = 0; e < E; ++e)
    if (!in_tree[e] && !in_cotree[e]) tc.leftover.push_back(e);
  SURF_CHECK((int)tc.leftover.size() == 2 * m.genus(), "tree-cotree leftover must be 2g edges");

  tc.words = ((int)tc.leftover.size() + 63) / 64;
  tc.mask.assign(E, std::vector<uint64_t>(tc.words, 0));
  // tree paths to root for loop construction
  std::vector<int32_t> parent_dart(m.num_vertices(), -1);
  {
    std::vector<char> seen(m.num_vertices(), 0);
    std::deque<int32_t> q{0};
    seen[0] = 1;
    while (!q.empty()) {
      int32_t v = q.front();
      q.pop_front();
      for (int32_t d : m.vertex_orbit(v)) {
        if (!in_tree[m.edge_of(d)]) continue;
        int32_t u = m.vertex_of(m.twin(d));
        if (!seen[u]) {
          seen[u] = 1;
          parent_dart[u] = m.twin(d);  // dart from u toward v
          q.push_back(u);
        }
      }
    }
  }
  for (size_t i = 0; i < tc.leftover.size(); ++i) {
    int32_t x = tc.leftover[i];
    // loop = x + tree path between its endpoints (xor of the two root paths)
    tc.mask[x][i / 64] ^= (uint64_t)1 << (i % 64);
    for (int32_t v : {m.vertex_of(2 * x), m.vertex_of(2 * x + 1)}) {
      int32_t u = v;
      while (parent_dart[u] != -1) {
        tc.mask[m.edge_of(parent_dart[u])][i / 64] ^= (uint64_t)1 << (i % 64);
        u = m.vertex_of(m.twin(parent_dart[u]));
      }
    }
  }
  return tc;
}

std::vector<uint8_t> pair_with_basis(const TreeCotree& tc, const std::vector<int32_t>& edges) {
  std::vector<uint64_t> acc(tc.words, 0);
  for (int32_t e : edges)
    for (int w = 0; w < tc.words; ++w) acc[w] ^= tc.mask[e][w];
  std::vector<uint8_t> out(tc.leftover.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = (acc[i / 64] >> (i % 64)) & 1;
  return out;
}

}  // namespace

std::vector<uint8_t> homology_class_z2(const CrossMetricSurface& s, const CrossCurve& c) {
  if (s.map().num_boundaries() > 0)
    throw SurfError(ErrorCode::HasBoundary, "homology basis requires a surface without boundary");
  TreeCotree tc = build_tree_cotree(s.map());
  std::vector<int32_t> edges;
  for (int32_t h : c.crossings) edges.push_back(s.map().edge_of(h));
  return pair_with_basis(tc, edges);
}

std::vector<uint8_t> homology_class_z2(const Triangulation& t, const PrimalWalk& w) {
  // dual_map preserves dart ids, so a primal walk crosses exactly the dual
  // edges with the same indices
  CrossMetricSurface s = dualize(t);
  CrossCurve c;
  for (int32_t d : w.darts) c.crossings.push_back(d);
  return homology_class_z2(s, c);
}

}  // namespace surf
