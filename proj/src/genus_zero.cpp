#include "surf/genus_zero.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "surf/curve_ops.hpp"

namespace surf {

int multiplicity(const CrossMetricSurface& s, const std::vector<CrossCurve>& curves) {
  std::vector<int> count(s.map().num_edges(), 0);
  int best = 0;
  for (const CrossCurve& c : curves)
    for (int32_t h : c.crossings) best = std::max(best, ++count[s.map().edge_of(h)]);
  return best;
}

BoundaryTree boundary_tree(const CrossMetricSurface& s) {
  const CombinatorialMap& m = s.map();
  if (m.genus() != 0)
    throw SurfError(ErrorCode::WrongGenus, "boundary tree needs a genus-zero surface");
  const auto& holes = m.hole_faces();
  if ((int)holes.size() < 3)
    throw SurfError(ErrorCode::TooFewBoundaries, "need at least three boundary components");

  BoundaryTree bt;
  bt.parent_face.assign(m.num_faces(), -1);
  bt.parent_edge.assign(m.num_faces(), -1);
  std::vector<char> in_tree_face(m.num_faces(), 0);
  std::vector<char> joined(m.num_faces(), 0);
  std::map<int32_t, std::vector<std::pair<int32_t, int32_t>>> adj;  // face -> (edge, nbr)

  auto add_adj = [&](int32_t f, int32_t e, int32_t g) {
    adj[f].push_back({e, g});
    adj[g].push_back({e, f});
  };

  // grow from the first hole, repeatedly attaching the nearest unjoined hole
  joined[holes[0]] = 1;
  std::vector<int32_t> seed_faces;
  for (int32_t d : m.face_orbit(holes[0])) {
    int32_t f = m.face_of(m.twin(d));
    if (!m.is_hole(f) && !in_tree_face[f]) {
      in_tree_face[f] = 1;
      seed_faces.push_back(f);
      add_adj(holes[0], m.edge_of(d), f);
      break;  // one touch per hole: attach through a single boundary edge
    }
  }
  SURF_CHECK(!seed_faces.empty(), "hole without an interior neighbor face");

  for (int attached = 1; attached < (int)holes.size(); ++attached) {
    // BFS over interior faces from the current tree
    std::vector<int32_t> dist(m.num_faces(), -1), par_f(m.num_faces(), -1),
        par_e(m.num_faces(), -1);
    std::deque<int32_t> q;
    std::vector<int32_t> tree_faces;
    for (int32_t f = 0; f < m.num_faces(); ++f)
      if (in_tree_face[f]) {
        dist[f] = 0;
        q.push_back(f);
        tree_faces.push_back(f);
      }
    while (!q.empty()) {
      int32_t f = q.front();
      q.pop_front();
      for (int32_t d : m.face_orbit(f)) {
        if (m.is_boundary_edge(m.edge_of(d))) continue;
        int32_t g2 = m.face_of(m.twin(d));
        if (m.is_hole(g2) || dist[g2] != -1) continue;
        dist[g2] = dist[f] + 1;
        par_f[g2] = f;
        par_e[g2] = m.edge_of(d);
        q.push_back(g2);
      }
    }
    // nearest unjoined hole: min (distance to an adjacent interior face, ids)
    int32_t best_hole = -1, best_face = -1, best_edge = -1;
    long long best_key = -1;
    for (int32_t h : holes) {
      if (joined[h]) continue;
      for (int32_t d : m.face_orbit(h)) {
        int32_t f = m.face_of(m.twin(d));
        if (m.is_hole(f) || dist[f] == -1) continue;
        long long key = ((long long)dist[f] << 40) | ((long long)f << 16) | m.edge_of(d);
        if (best_key == -1 || key < best_key || (key == best_key && h < best_hole)) {
          best_key = key;
          best_hole = h;
          best_face = f;
          best_edge = m.edge_of(d);
        }
      }
    }
    SURF_CHECK(best_hole != -1, "surface interior is disconnected from a hole");
    add_adj(best_hole, best_edge, best_face);
    joined[best_hole] = 1;
    for (int32_t f = best_face; f != -1 && !in_tree_face[f]; f = par_f[f]) {
      in_tree_face[f] = 1;
      if (par_f[f] != -1) {
        bt.tree_edges.push_back(par_e[f]);
        add_adj(f, par_e[f], par_f[f]);
      }
    }
  }

  // embedded Euler tour: holes in rotation-consistent order along the path p
  // that follows the tree
  std::vector<char> edge_in_tree(m.num_edges(), 0);
  for (auto& [f, lst] : adj)
    for (auto& [e, g2] : lst) edge_in_tree[e] = 1;
  // per face, incident tree edges in boundary-orbit order
  auto ordered_tree_edges = [&](int32_t f) {
    std::vector<std::pair<int32_t, int32_t>> out;  // (edge, neighbor)
    for (int32_t d : m.face_orbit(f)) {
      int32_t e = m.edge_of(d);
      if (!edge_in_tree[e]) continue;
      int32_t g2 = m.face_of(m.twin(d));
      bool listed = false;
      for (auto& [ee, gg] : adj[f])
        if (ee == e && gg == g2) listed = true;
      if (listed) out.push_back({e, g2});
    }
    return out;
  };
  std::function<void(int32_t, int32_t)> tour = [&](int32_t f, int32_t in_edge) {
    if (m.is_hole(f)) {
      bt.hole_order.push_back(f);
      return;
    }
    auto lst = ordered_tree_edges(f);
    SURF_CHECK(!lst.empty(), "tree face without tree edges");
    size_t start = 0;
    for (size_t i = 0; i < lst.size(); ++i)
      if (lst[i].first == in_edge) start = i;
    for (size_t k = 1; k <= lst.size(); ++k) {
      auto [e, g2] = lst[(start + k) % lst.size()];
      if (e == in_edge) continue;
      tour(g2, e);
    }
  };
  int32_t root = holes[0];
  bt.hole_order.push_back(root);
  SURF_CHECK(adj[root].size() == 1, "root hole must be a leaf of the tree");
  tour(adj[root][0].second, adj[root][0].first);
  SURF_CHECK(bt.hole_order.size() == holes.size(), "tour missed a hole");
  return bt;
}

namespace {

// BFS corridor between the outer collars of two curves, crossing only
// segments of tree edges; returns the attach arcs and the gate darts.
struct Corridor {
  int32_t attach_a = -1, attach_b = -1;
  std::vector<int32_t> gates;
};

Corridor find_corridor(const Arrangement& A, int c1, int c2,
                       const std::vector<char>& edge_in_tree) {
  struct Item {
    int32_t anchor;  // dart whose left face is the frontier face
    int32_t seed_arc;
  };
  std::vector<uint8_t> seen(A.num_dart_slots(), 0);
  std::deque<Item> q;
  std::map<int32_t, std::pair<int32_t, int32_t>> parent;  // anchor -> (gate, prev anchor)
  for (int32_t a : A.curve_arcs(c1)) q.push_back({A.twin(a), a});
  std::vector<int32_t> target_arc(A.num_dart_slots(), -1);
  for (int32_t a : A.curve_arcs(c2)) target_arc[A.twin(a)] = a;

  auto finish = [&](int32_t anchor, int32_t hit_dart) {
    Corridor out;
    out.attach_b = target_arc[hit_dart];
    std::vector<int32_t> rev;
    int32_t cur = anchor;
    while (true) {
      auto it = parent.find(cur);
      if (it == parent.end()) break;
      rev.push_back(it->second.first);
      cur = it->second.second;
    }
    out.attach_a = -1;
    for (int32_t a : A.curve_arcs(c1))
      if (A.twin(a) == cur) out.attach_a = a;
    SURF_CHECK(out.attach_a != -1, "corridor did not start on the first curve");
    out.gates.assign(rev.rbegin(), rev.rend());
    return out;
  };

  while (!q.empty()) {
    Item it = q.front();
    q.pop_front();
    if (seen[it.anchor]) continue;
    // walk the face, looking for targets and expansions
    int32_t d = it.anchor;
    do {
      seen[d] = 1;
      if (target_arc[d] != -1) {
        Corridor out = finish(it.anchor, d);
        if (out.attach_a == -1) break;
        return out;
      }
      d = A.face_next(d);
      A.add_ops(1);
    } while (d != it.anchor);
    d = it.anchor;
    do {
      if (A.is_graph(d) && edge_in_tree[A.owner(d)] && !seen[A.twin(d)]) {
        int32_t nxt = A.twin(d);
        if (!parent.count(nxt)) parent[nxt] = {d, it.anchor};
        q.push_back({nxt, it.seed_arc});
      }
      d = A.face_next(d);
    } while (d != it.anchor);
  }
  throw SurfError(ErrorCode::Internal, "no corridor between the curves along the tree");
}

// route: full outer loop of c1, corridor, full outer loop of c2, corridor back
int insert_group_curve(Arrangement& A, int c1, int c2, const std::vector<char>& edge_in_tree) {
  Corridor cor = find_corridor(A, c1, c2, edge_in_tree);
  Arrangement::CurveBuilder b(A, A.twin(cor.attach_a));
  auto beside = [&](int cid, int32_t from) {
    int32_t a = from;
    do {
      int32_t gr = A.graph_right_at_head(a);
      SURF_CHECK(A.is_graph(gr), "group child has a non-graph crossing");
      int32_t owner = A.owner(gr);
      int32_t xv = A.origin(gr);
      int32_t gd = b.find_on_face([&](int32_t d) {
        return A.is_graph(d) && A.owner(d) == owner &&
               (A.origin(d) == xv || A.origin(A.twin(d)) == xv);
      });
      SURF_CHECK(gd != -1, "parallel gate not found beside the child curve");
      b.cross(gd);
      a = A.next_arc(a);
    } while (a != from);
  };
  auto lane = [&](const std::vector<int32_t>& gates, bool rev) {
    for (size_t i = 0; i < gates.size(); ++i) {
      int32_t g = gates[rev ? gates.size() - 1 - i : i];
      int32_t owner = A.owner(g);
      int32_t gd = b.find_on_face([&](int32_t d) { return A.is_graph(d) && A.owner(d) == owner; });
      SURF_CHECK(gd != -1, "corridor gate not found");
      b.cross(gd);
    }
  };
  beside(c1, cor.attach_a);
  lane(cor.gates, false);
  beside(c2, cor.attach_b);
  lane(cor.gates, true);
  return b.close();
}

}  // namespace

PairingDecomposition pairing_decomposition(const CrossMetricSurface& s) {
  const CombinatorialMap& m = s.map();
  if (m.genus() != 0) throw SurfError(ErrorCode::WrongGenus, "pairing needs genus zero");
  if (m.num_boundaries() < 3)
    throw SurfError(ErrorCode::TooFewBoundaries, "pairing needs at least three holes");

  PairingDecomposition out;
  out.tree = boundary_tree(s);
  std::vector<char> edge_in_tree(m.num_edges(), 0);
  for (int32_t e : out.tree.tree_edges) edge_in_tree[e] = 1;

  Arrangement arr(s);
  // scaffolding pushoffs, one per hole, in tour order; they are not part of
  // the output and are deleted at the end
  std::vector<int> items;
  std::vector<int> scaffolds;
  for (int32_t h : out.tree.hole_order) {
    int cid = arr.insert_hole_pushoff(m.face_dart(h));
    items.push_back(cid);
    scaffolds.push_back(cid);
  }

  std::vector<int> real_curves;
  while ((int)items.size() > 3) {
    std::vector<int> next_items;
    if (items.size() == 4) {
      int cid = insert_group_curve(arr, items[0], items[1], edge_in_tree);
      real_curves.push_back(cid);
      next_items = {cid, items[2], items[3]};
    } else {
      size_t i = 0;
      while (i + 1 < items.size()) {
        int cid = insert_group_curve(arr, items[i], items[i + 1], edge_in_tree);
        real_curves.push_back(cid);
        next_items.push_back(cid);
        i += 2;
      }
      if (i < items.size()) next_items.push_back(items[i]);
    }
    items = std::move(next_items);
  }

  for (int cid : real_curves) {
    out.curves.push_back(arr.crossing_sequence(cid));
    out.lengths.push_back(arr.curve(cid).length);
    out.total_length += arr.curve(cid).length;
  }
  SURF_CHECK((int)out.curves.size() == m.num_boundaries() - 3,
             "pairing must produce b-3 curves");
  out.max_multiplicity = multiplicity(s, out.curves);
  return out;
}

GenusZeroCompletion complete_genus_zero(const CrossMetricSurface& s,
                                        const std::vector<CrossCurve>& genus_zero_system) {
  Overlay ov = overlay(s, genus_zero_system);
  CutResult cut = cut_along(ov.arr, ov.curve_ids);
  if (cut.components.size() != 1)
    throw SurfError(ErrorCode::NotGenusZeroDecomposition, "complement is disconnected");
  CutComponent& comp = cut.components[0];
  if (comp.surface.genus() != 0)
    throw SurfError(ErrorCode::NotGenusZeroDecomposition, "complement has positive genus");
  if (comp.surface.boundaries() != 2 * (int)genus_zero_system.size() ||
      comp.surface.boundaries() < 3)
    throw SurfError(ErrorCode::NotGenusZeroDecomposition,
                    "complement must have 2g >= 4 boundaries");

  PairingDecomposition pairing = pairing_decomposition(comp.surface);

  GenusZeroCompletion out;
  for (const CrossCurve& c : genus_zero_system) {
    out.all_curves.push_back(c);
    out.lengths.push_back(c.length());
    out.total_length += c.length();
  }
  for (const CrossCurve& c : pairing.curves) {
    CrossCurve mapped;
    for (int32_t h : c.crossings) {
      SURF_CHECK(comp.base_dart[h] >= 0, "pairing curve crossed a boundary copy");
      mapped.crossings.push_back(comp.base_dart[h]);
    }
    out.all_curves.push_back(mapped);
    out.lengths.push_back(mapped.length());
    out.total_length += mapped.length();
    ++out.added;
  }
  out.max_multiplicity_added = pairing.max_multiplicity;
  return out;
}

}  // namespace surf
