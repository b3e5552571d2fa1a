#include "surf/cut.hpp"

#include <algorithm>
#include <map>

#include "surf/curve_ops.hpp"

namespace surf {

CutResult cut_along(const Arrangement& arr, const std::vector<int>& curve_ids) {
  std::vector<char> in_cut(arr.num_curve_slots(), 0);
  for (int c : curve_ids) {
    SURF_CHECK(arr.curve_live(c), "cut: curve not live");
    in_cut[c] = 1;
  }
  for (int c : arr.live_curves())
    SURF_CHECK(in_cut[c], "cut: arrangement contains live curves outside the cut set");

  // Output dart universe: graph darts survive 1:1, each cut arc doubles.
  const int slots = arr.num_dart_slots();
  std::vector<int32_t> gmap(slots, -1);
  int32_t nout = 0;
  for (int32_t d = 0; d < slots; ++d)
    if (arr.dart_alive(d) && arr.is_graph(d)) gmap[d] = nout++;

  // arc copies: per forward dart a: L fwd, L bwd, R fwd, R bwd
  struct ArcCopy {
    int32_t a_l, b_l, a_r, b_r;
  };
  std::map<int32_t, ArcCopy> copies;  // forward dart -> copies
  std::vector<std::vector<int32_t>> cut_arcs(arr.num_curve_slots());
  for (int c : curve_ids) {
    cut_arcs[c] = arr.curve_arcs(c);
    for (int32_t a : cut_arcs[c]) {
      ArcCopy cp{nout, nout + 1, nout + 2, nout + 3};
      nout += 4;
      copies[a] = cp;
    }
  }

  std::vector<int32_t> otwin(nout, -1), onext(nout, -1);
  std::vector<int32_t> parent(nout, -1);   // arrangement dart, -1 for copies
  std::vector<int32_t> bdart(nout, -1);    // base-surface dart id
  std::vector<int> copy_curve(nout, -1);   // owning cut curve for copies
  std::vector<char> copy_hole_side(nout, 0);

  for (int32_t d = 0; d < slots; ++d) {
    if (gmap[d] < 0) continue;
    otwin[gmap[d]] = gmap[arr.twin(d)];
    parent[gmap[d]] = d;
    bdart[gmap[d]] = 2 * arr.owner(d) + arr.dir(d);
    int32_t v = arr.origin(d);
    if (arr.vertex_kind(v) == Arrangement::VertexKind::Graph) onext[gmap[d]] = gmap[arr.next(d)];
  }

  for (int c : curve_ids) {
    for (int32_t a : cut_arcs[c]) {
      const ArcCopy& cp = copies.at(a);
      otwin[cp.a_l] = cp.b_l;
      otwin[cp.b_l] = cp.a_l;
      otwin[cp.a_r] = cp.b_r;
      otwin[cp.b_r] = cp.a_r;
      for (int32_t nd : {cp.a_l, cp.b_l, cp.a_r, cp.b_r}) copy_curve[nd] = c;
      // hole sides: left hole orbit = backward copies, right hole orbit = forward copies
      copy_hole_side[cp.b_l] = 1;
      copy_hole_side[cp.a_r] = 1;
    }
    // rotations at each crossing vertex of the curve
    for (int32_t a2 : cut_arcs[c]) {
      // a2 leaves crossing x; the incoming arc is prev_arc(a2)
      int32_t a1 = arr.prev_arc(a2);
      int32_t b1 = arr.twin(a1);
      int32_t gR = arr.next(a2);        // rotation at x: a2 -> gR -> b1 -> gL
      int32_t gL = arr.prev(a2);
      SURF_CHECK(arr.is_graph(gR) && arr.is_graph(gL),
                 "cut: crossing with a non-graph edge (curves not disjoint?)");
      SURF_CHECK(arr.next(gR) == b1 && arr.next(b1) == gL, "cut: malformed crossing rotation");
      const ArcCopy& out_cp = copies.at(a2);
      const ArcCopy& in_cp = copies.at(a1);
      // left vertex: (a2_L -> b1_L -> gL -> a2_L)
      onext[out_cp.a_l] = in_cp.b_l;
      onext[in_cp.b_l] = gmap[gL];
      onext[gmap[gL]] = out_cp.a_l;
      // right vertex: (a2_R -> gR -> b1_R -> a2_R)
      onext[out_cp.a_r] = gmap[gR];
      onext[gmap[gR]] = in_cp.b_r;
      onext[in_cp.b_r] = out_cp.a_r;
    }
  }

  // component split over twin/next adjacency
  std::vector<int32_t> comp(nout, -1);
  int ncomp = 0;
  for (int32_t d = 0; d < nout; ++d) {
    if (comp[d] != -1) continue;
    std::vector<int32_t> stack{d};
    comp[d] = ncomp;
    while (!stack.empty()) {
      int32_t e = stack.back();
      stack.pop_back();
      for (int32_t f : {otwin[e], onext[e]}) {
        SURF_CHECK(f >= 0, "cut: dangling output dart");
        if (comp[f] == -1) {
          comp[f] = ncomp;
          stack.push_back(f);
        }
      }
    }
    ++ncomp;
  }

  // per component: assign dense pair ids, build maps
  CutResult result;
  std::vector<std::vector<int32_t>> comp_darts(ncomp);
  for (int32_t d = 0; d < nout; ++d) comp_darts[comp[d]].push_back(d);

  for (int ci = 0; ci < ncomp; ++ci) {
    auto& darts = comp_darts[ci];
    std::vector<int32_t> local(nout, -1);
    int32_t k = 0;
    for (int32_t d : darts) {
      if (local[d] != -1) continue;
      local[d] = k;
      local[otwin[d]] = k + 1;
      k += 2;
    }
    std::vector<int32_t> twin(k), next(k);
    std::vector<int32_t> pdart(k, -1), be(k, -1);
    for (int32_t d : darts) {
      int32_t ld = local[d];
      twin[ld] = local[otwin[d]];
      next[ld] = local[onext[d]];
      pdart[ld] = parent[d];
      be[ld] = bdart[d];
    }
    // hole reps: inherited holes + the doubled-copy cycles
    std::vector<int32_t> reps;
    std::vector<int> rep_curve;
    std::vector<int32_t> rep_base_face;
    for (int32_t d : darts) {
      if (parent[d] >= 0 && arr.on_hole_boundary(parent[d])) {
        reps.push_back(local[d]);
        rep_curve.push_back(-1);
        // hole-boundary darts are untouched base darts
        rep_base_face.push_back(arr.base().map().face_of(parent[d]));
      } else if (copy_hole_side[d]) {
        reps.push_back(local[d]);
        rep_curve.push_back(copy_curve[d]);
        rep_base_face.push_back(-1);
      }
    }

    CombinatorialMap m(std::move(twin), std::move(next), reps);
    // hole tags parallel to m.hole_faces()
    std::vector<int> hole_curve(m.num_boundaries(), -1);
    std::vector<int32_t> hole_base_face(m.num_boundaries(), -1);
    for (size_t i = 0; i < reps.size(); ++i) {
      int32_t f = m.face_of(reps[i]);
      auto it = std::lower_bound(m.hole_faces().begin(), m.hole_faces().end(), f);
      SURF_CHECK(it != m.hole_faces().end() && *it == f, "hole bookkeeping broken");
      hole_curve[it - m.hole_faces().begin()] = rep_curve[i];
      hole_base_face[it - m.hole_faces().begin()] = rep_base_face[i];
    }

    CutComponent out{CrossMetricSurface(std::move(m)), std::move(pdart), std::move(be),
                     std::move(hole_curve), std::move(hole_base_face), {}};
    // vertex parents (graph vertices only)
    const CombinatorialMap& mm = out.surface.map();
    out.vertex_parent.assign(mm.num_vertices(), -1);
    for (int32_t ld = 0; ld < mm.num_darts(); ++ld) {
      if (out.parent_dart[ld] >= 0) {
        int32_t av = arr.origin(out.parent_dart[ld]);
        if (arr.vertex_kind(av) == Arrangement::VertexKind::Graph)
          out.vertex_parent[mm.vertex_of(ld)] = av;
      }
    }
    result.components.push_back(std::move(out));
  }
  return result;
}

CutResult cut_along(const CrossMetricSurface& s, const std::vector<CrossCurve>& curves) {
  Overlay ov = overlay(s, curves);
  return cut_along(ov.arr, ov.curve_ids);
}

}  // namespace surf
