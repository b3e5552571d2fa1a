#include "surf/systole.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "surf/cut.hpp"

namespace surf {

namespace {

// Face adjacency view of a cross-metric surface: nodes are interior faces of
// G*, arcs are the non-boundary edges of G*.
struct FaceGraph {
  const CombinatorialMap* m;
  std::vector<std::vector<std::pair<int32_t, int32_t>>> adj;  // (edge id, other face)
  int nodes = 0;

  explicit FaceGraph(const CrossMetricSurface& s) : m(&s.map()) {
    nodes = m->num_faces();
    adj.resize(nodes);
    for (int32_t e = 0; e < m->num_edges(); ++e) {
      if (m->is_boundary_edge(e)) continue;
      int32_t f0 = m->face_of(2 * e), f1 = m->face_of(2 * e + 1);
      adj[f0].push_back({e, f1});
      if (f0 != f1) adj[f1].push_back({e, f0});
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
  }
  bool usable(int32_t f) const { return !m->is_hole(f); }
};

// Realize a face cycle (f_0, e_1, f_1, ..., e_k, f_0) as a crossing sequence:
// crossing i enters face f_i, i.e. the dart of e_i with face f_i on its left.
CrossCurve realize(const CombinatorialMap& m, const std::vector<int32_t>& edges,
                   const std::vector<int32_t>& faces) {
  CrossCurve c;
  for (size_t i = 0; i < edges.size(); ++i) {
    int32_t e = edges[i], f = faces[(i + 1) % faces.size()];
    int32_t d = (m.face_of(2 * e) == f) ? 2 * e : 2 * e + 1;
    SURF_CHECK(m.face_of(d) == f, "cycle realization: face/edge mismatch");
    c.crossings.push_back(d);
  }
  return c;
}

bool cycle_satisfies(const CrossMetricSurface& s, const CrossCurve& c, CyclePredicate p) {
  switch (p) {
    case CyclePredicate::Noncontractible: return !is_contractible(s, c);
    case CyclePredicate::Nonseparating: return !is_separating(s, c);
    case CyclePredicate::Splitting: return is_separating(s, c) && !is_contractible(s, c);
  }
  return false;
}

// Exhaustive enumeration of simple cycles in (length, lex edge sequence)
// order.  Each cycle appears with its minimal face as basepoint; both
// directions are enumerated, which only duplicates predicate checks.
struct Enumerator {
  const FaceGraph& fg;
  long long budget;
  long long steps = 0;
  std::vector<char> on_path;
  std::vector<int32_t> path_edges, path_faces;

  Enumerator(const FaceGraph& g, long long b) : fg(g), budget(b), on_path(g.nodes, 0) {}

  template <typename Visit>
  bool dfs(int32_t root, int32_t at, int depth, int limit, const Visit& visit) {
    if (++steps > budget) throw SurfError(ErrorCode::BudgetExceeded, "cycle enumeration budget");
    for (auto [e, to] : fg.adj[at]) {
      if (!fg.usable(to)) continue;
      if (to == root && depth + 1 >= 1) {
        if (depth + 1 == limit) {
          path_edges.push_back(e);
          bool done = visit(path_edges, path_faces);
          path_edges.pop_back();
          if (done) return true;
        }
        if (to == at) continue;  // a loop edge only closes length-1 cycles
      }
      if (depth + 1 < limit && to != root && to > root && !on_path[to]) {
        on_path[to] = 1;
        path_edges.push_back(e);
        path_faces.push_back(to);
        bool done = dfs(root, to, depth + 1, limit, visit);
        path_faces.pop_back();
        path_edges.pop_back();
        on_path[to] = 0;
        if (done) return true;
      }
    }
    return false;
  }

  // visits cycles of exactly `limit` edges in lex order per root
  template <typename Visit>
  bool run_length(int limit, const Visit& visit) {
    for (int32_t root = 0; root < fg.nodes; ++root) {
      if (!fg.usable(root)) continue;
      path_edges.clear();
      path_faces.assign(1, root);
      if (dfs(root, root, 0, limit, visit)) return true;
    }
    return false;
  }
};

std::optional<CycleResult> enumerate_shortest(const CrossMetricSurface& s, CyclePredicate p,
                                              long long budget, int max_len) {
  FaceGraph fg(s);
  Enumerator en(fg, budget);
  int interior_faces = 0;
  for (int32_t f = 0; f < fg.nodes; ++f)
    if (fg.usable(f)) ++interior_faces;
  int cap = std::min(max_len, interior_faces);
  for (int limit = 1; limit <= cap; ++limit) {
    std::optional<CycleResult> found;
    en.run_length(limit, [&](const std::vector<int32_t>& edges,
                             const std::vector<int32_t>& faces) {
      CrossCurve c = realize(s.map(), edges, faces);
      if (cycle_satisfies(s, c, p)) {
        found = CycleResult{(int)edges.size(), c};
        return true;
      }
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

// Exact shortest cycle via BFS fundamental loops: the shortest cycle with a
// nonzero obstruction (non-contractible or nonzero Z2 class) equals the
// shortest reduced fundamental loop over all BFS roots, because any cycle is
// a product of the fundamental loops of its non-tree edges and its arcs
// dominate the BFS distances.
struct LoopSearch {
  const CrossMetricSurface& s;
  FaceGraph fg;
  explicit LoopSearch(const CrossMetricSurface& sm) : s(sm), fg(sm) {}

  std::optional<CycleResult> run(const std::function<bool(const std::vector<int32_t>&,
                                                          const std::vector<int32_t>&)>& good) {
    std::optional<CycleResult> best;
    int best_len = INT32_MAX;
    std::vector<int32_t> dist(fg.nodes), par_edge(fg.nodes), par_face(fg.nodes);
    for (int32_t root = 0; root < fg.nodes; ++root) {
      if (!fg.usable(root)) continue;
      // BFS truncated at the current best radius
      std::fill(dist.begin(), dist.end(), -1);
      std::deque<int32_t> q{root};
      dist[root] = 0;
      std::vector<std::tuple<int, int32_t, int32_t, int32_t>> cands;  // (len, e, u, w)
      while (!q.empty()) {
        int32_t u = q.front();
        q.pop_front();
        if (2LL * dist[u] > best_len) break;
        for (auto [e, w] : fg.adj[u]) {
          if (!fg.usable(w)) continue;
          if (dist[w] == -1) {
            dist[w] = dist[u] + 1;
            par_edge[w] = e;
            par_face[w] = u;
            q.push_back(w);
          } else if (!(par_face[w] == u && par_edge[w] == e) &&
                     !(par_face[u] == w && par_edge[u] == e)) {
            if (u <= w) cands.push_back({dist[u] + dist[w] + 1, e, u, w});
          }
        }
      }
      std::sort(cands.begin(), cands.end());
      for (auto& [len0, e, u, w] : cands) {
        if (len0 >= best_len) break;
        // reduce the common root prefix to get a simple cycle through the LCA
        std::vector<int32_t> pu_f{u}, pw_f{w};
        std::vector<int32_t> pu_e, pw_e;
        int32_t a = u, b = w;
        while (dist[a] > dist[b]) {
          pu_e.push_back(par_edge[a]);
          a = par_face[a];
          pu_f.push_back(a);
        }
        while (dist[b] > dist[a]) {
          pw_e.push_back(par_edge[b]);
          b = par_face[b];
          pw_f.push_back(b);
        }
        while (a != b) {
          pu_e.push_back(par_edge[a]);
          a = par_face[a];
          pu_f.push_back(a);
          pw_e.push_back(par_edge[b]);
          b = par_face[b];
          pw_f.push_back(b);
        }
        // cycle: lca -> u (reverse pu), edge e, w -> lca (pw)
        std::vector<int32_t> edges, faces;
        for (auto it = pu_f.rbegin(); it != pu_f.rend(); ++it) faces.push_back(*it);
        for (auto it = pu_e.rbegin(); it != pu_e.rend(); ++it) edges.push_back(*it);
        edges.push_back(e);
        for (size_t i = 0; i + 1 < pw_f.size(); ++i) {
          faces.push_back(pw_f[i]);
          edges.push_back(pw_e[i]);
        }
        int len = (int)edges.size();
        if (len >= best_len) continue;
        if (u == w && len != 1) continue;  // non-tree loop edge handled as length 1
        if (good(edges, faces)) {
          best_len = len;
          best = CycleResult{len, realize(s.map(), edges, faces)};
          break;  // candidates sorted: first good one is minimal for this root
        }
      }
    }
    return best;
  }
};

constexpr int kEnumerationFaceLimit = 40;

}  // namespace

double pruning_bound(int n, int genus) {
  int g = std::max(genus, 1);
  return 4.0 * std::sqrt((double)n / g) * (2.0 + std::log2((double)genus + 1.0));
}

CycleResult shortest_noncontractible(const CrossMetricSurface& s) {
  if (s.genus() == 0 && s.boundaries() == 0)
    throw SurfError(ErrorCode::NoNoncontractibleCurve, "sphere has no non-contractible curve");
  if (s.genus() == 0 && s.boundaries() <= 1)
    throw SurfError(ErrorCode::NoNoncontractibleCurve, "disk has no non-contractible curve");
  int bound = (int)std::ceil(pruning_bound(s.n(), s.genus()));
  if (s.map().num_interior_faces() <= kEnumerationFaceLimit || s.boundaries() > 0) {
    auto r = enumerate_shortest(s, CyclePredicate::Noncontractible, 500'000'000LL, bound);
    if (!r) throw SurfError(ErrorCode::NoNoncontractibleCurve, "no non-contractible cycle found");
    return *r;
  }
  LoopSearch ls(s);
  auto r = ls.run([&](const std::vector<int32_t>& edges, const std::vector<int32_t>& faces) {
    return !is_contractible(s, realize(s.map(), edges, faces));
  });
  SURF_CHECK(r.has_value(), "positive-genus surface must have a non-contractible cycle");
  return *r;
}

CycleResult shortest_nonseparating(const CrossMetricSurface& s) {
  if (s.genus() == 0)
    throw SurfError(ErrorCode::NoNoncontractibleCurve, "genus zero has no non-separating curve");
  if (s.map().num_interior_faces() <= kEnumerationFaceLimit || s.boundaries() > 0) {
    int bound = (int)std::ceil(pruning_bound(s.n(), s.genus()));
    auto r = enumerate_shortest(s, CyclePredicate::Nonseparating, 500'000'000LL, bound);
    if (!r) throw SurfError(ErrorCode::NoNoncontractibleCurve, "no non-separating cycle found");
    return *r;
  }
  // pair candidate cycles against the homology basis; no cutting needed
  CrossCurve probe;
  LoopSearch ls(s);
  auto r = ls.run([&](const std::vector<int32_t>& edges, const std::vector<int32_t>&) {
    CrossCurve c;
    for (int32_t e : edges) c.crossings.push_back(2 * e);
    auto cls = homology_class_z2(s, c);
    return std::any_of(cls.begin(), cls.end(), [](uint8_t b) { return b != 0; });
  });
  SURF_CHECK(r.has_value(), "positive-genus surface must have a non-separating cycle");
  return *r;
}

CycleResult shortest_splitting(const CrossMetricSurface& s, long long budget) {
  if (s.genus() < 2)
    throw SurfError(ErrorCode::NotApplicable,
                    "splitting curves require genus >= 2 (every separating simple curve on the "
                    "torus or sphere is contractible)");
  auto r = enumerate_shortest(s, CyclePredicate::Splitting, budget,
                              s.map().num_interior_faces());
  if (!r) throw SurfError(ErrorCode::NotApplicable, "no splitting cycle found");
  return *r;
}

std::optional<CycleResult> brute_force_oracle(const CrossMetricSurface& s, CyclePredicate p,
                                              long long budget) {
  return enumerate_shortest(s, p, budget, s.map().num_interior_faces());
}

PrimalWalk face_cycle_to_primal_walk(const Triangulation& t, const CrossCurve& dual_curve) {
  // dual ids coincide with primal ids: dual.face_of(d) == primal.vertex_of(d).
  // The walk step leaving the zone before crossing h is the primal dart
  // twin(h), which originates at that zone's vertex.
  PrimalWalk w;
  for (int32_t h : dual_curve.crossings) w.darts.push_back(t.map().twin(h));
  return w;
}

PrimalCycleResult shortest_noncontractible(const Triangulation& t) {
  CrossMetricSurface s = dualize(t);
  CycleResult r = shortest_noncontractible(s);
  return {r.length, face_cycle_to_primal_walk(t, r.curve), r.curve};
}

PrimalCycleResult shortest_nonseparating(const Triangulation& t) {
  CrossMetricSurface s = dualize(t);
  CycleResult r = shortest_nonseparating(s);
  return {r.length, face_cycle_to_primal_walk(t, r.curve), r.curve};
}

PrimalCycleResult shortest_splitting(const Triangulation& t, long long budget) {
  CrossMetricSurface s = dualize(t);
  CycleResult r = shortest_splitting(s, budget);
  return {r.length, face_cycle_to_primal_walk(t, r.curve), r.curve};
}

SystoleReport systole_report(const CrossMetricSurface& s, bool with_splitting) {
  SystoleReport rep;
  CycleResult ew = shortest_noncontractible(s);
  rep.edge_width = ew.length;
  rep.edge_width_witness = ew.curve;
  CycleResult ns = shortest_nonseparating(s);
  rep.nonseparating_width = ns.length;
  rep.nonseparating_witness = ns.curve;
  if (with_splitting && s.genus() >= 2) {
    try {
      CycleResult sp = shortest_splitting(s);
      rep.splitting_width = sp.length;
      rep.splitting_witness = sp.curve;
    } catch (const SurfError& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
    }
  }
  return rep;
}

}  // namespace surf
