#include "surf/arrangement.hpp"

#include <algorithm>

namespace surf {

Arrangement::Arrangement(const CrossMetricSurface& s) : base_(&s) {
  const CombinatorialMap& m = s.map();
  const int h = m.num_darts();
  twin_.assign(m.raw_twin().begin(), m.raw_twin().end());
  next_.assign(m.raw_next().begin(), m.raw_next().end());
  prev_.assign(h, -1);
  for (int32_t d = 0; d < h; ++d) prev_[next_[d]] = d;
  origin_.resize(h);
  kind_.assign(h, EdgeKind::Graph);
  owner_.resize(h);
  forward_.assign(h, 0);
  dir_.resize(h);
  hole_side_.assign(h, 0);
  alive_.assign(h, 1);
  for (int32_t d = 0; d < h; ++d) {
    origin_[d] = m.vertex_of(d);
    owner_[d] = d / 2;
    dir_[d] = d & 1;
    hole_side_[d] = m.is_hole(m.face_of(d)) ? 1 : 0;
  }
  vkind_.assign(m.num_vertices(), VertexKind::Graph);
  vdart_.resize(m.num_vertices());
  valive_.assign(m.num_vertices(), 1);
  for (int32_t v = 0; v < m.num_vertices(); ++v) vdart_[v] = m.vertex_dart(v);
  alive_darts_ = h;
  alive_vertices_ = m.num_vertices();
}

int Arrangement::vertex_degree(int32_t v) const {
  int deg = 0;
  int32_t d0 = vdart_[v], d = d0;
  do {
    ++deg;
    d = next_[d];
  } while (d != d0);
  return deg;
}

std::vector<int> Arrangement::live_curves() const {
  std::vector<int> out;
  for (int c = 0; c < (int)curves_.size(); ++c)
    if (curves_[c].live) out.push_back(c);
  return out;
}

std::vector<int32_t> Arrangement::curve_arcs(int c) const {
  std::vector<int32_t> out;
  int32_t a0 = curves_[c].anchor;
  int32_t a = a0;
  do {
    out.push_back(a);
    a = next_arc(a);
    add_ops(1);
    SURF_CHECK((int)out.size() <= num_dart_slots(), "runaway curve walk");
  } while (a != a0);
  return out;
}

CrossCurve Arrangement::crossing_sequence(int c) const {
  CrossCurve out;
  for (int32_t a : curve_arcs(c)) {
    // Crossing at the head of arc a.  The half on the curve's right points
    // back along the original gate, so it is parallel to the base dart whose
    // left face the curve entered.
    int32_t gr = graph_right_at_head(a);
    if (kind_[gr] != EdgeKind::Graph) continue;  // transient curve-curve crossing
    out.crossings.push_back(2 * owner_[gr] + dir_[gr]);
  }
  return out;
}

std::pair<int32_t, int32_t> Arrangement::alloc_two() {
  int32_t d1, d2;
  if (dart_free_.size() >= 2) {
    d1 = dart_free_.back();
    dart_free_.pop_back();
    d2 = dart_free_.back();
    dart_free_.pop_back();
  } else {
    d1 = (int32_t)twin_.size();
    d2 = d1 + 1;
    twin_.resize(d1 + 2, -1);
    next_.resize(d1 + 2, -1);
    prev_.resize(d1 + 2, -1);
    origin_.resize(d1 + 2, -1);
    kind_.resize(d1 + 2, EdgeKind::Graph);
    owner_.resize(d1 + 2, -1);
    forward_.resize(d1 + 2, 0);
    dir_.resize(d1 + 2, 0);
    hole_side_.resize(d1 + 2, 0);
    alive_.resize(d1 + 2, 0);
  }
  for (int32_t d : {d1, d2}) {
    alive_[d] = 1;
    next_[d] = prev_[d] = -1;
    origin_[d] = -1;
    hole_side_[d] = 0;
  }
  twin_[d1] = d2;
  twin_[d2] = d1;
  alive_darts_ += 2;
  add_ops(1);
  return {d1, d2};
}

void Arrangement::free_dart(int32_t d) {
  SURF_CHECK(alive_[d], "double free of dart");
  alive_[d] = 0;
  dart_free_.push_back(d);
  --alive_darts_;
}

int32_t Arrangement::alloc_vertex(VertexKind k) {
  int32_t v;
  if (!vertex_free_.empty()) {
    v = vertex_free_.back();
    vertex_free_.pop_back();
  } else {
    v = (int32_t)vkind_.size();
    vkind_.resize(v + 1);
    vdart_.resize(v + 1, -1);
    valive_.resize(v + 1, 0);
  }
  vkind_[v] = k;
  valive_[v] = 1;
  ++alive_vertices_;
  return v;
}

void Arrangement::free_vertex(int32_t v) {
  valive_[v] = 0;
  vdart_[v] = -1;
  vertex_free_.push_back(v);
  --alive_vertices_;
}

int32_t Arrangement::subdivide(int32_t d) {
  // Splits edge {d, t} at a fresh vertex x.  d keeps its tail piece, t keeps
  // its head piece; the new darts at x continue each side's labels.  The
  // rotation at x is left as a placeholder two-cycle for the caller to wire.
  int32_t t = twin_[d];
  int32_t x = alloc_vertex(VertexKind::Crossing);
  auto [n1, n2] = alloc_two();  // n1 continues d's direction, n2 points back
  twin_[d] = n2;
  twin_[n2] = d;
  twin_[n1] = t;
  twin_[t] = n1;
  origin_[n1] = origin_[n2] = x;
  kind_[n1] = kind_[n2] = kind_[d];
  owner_[n1] = owner_[n2] = owner_[d];
  forward_[n1] = forward_[d];
  forward_[n2] = forward_[t];
  dir_[n1] = dir_[d];
  dir_[n2] = dir_[t];
  next_[n1] = n2;
  next_[n2] = n1;
  prev_[n1] = n2;
  prev_[n2] = n1;
  vdart_[x] = n1;
  add_ops(1);
  return x;
}

// ---------------------------------------------------------------------------
// CurveBuilder

Arrangement::CurveBuilder::CurveBuilder(Arrangement& arr, int32_t start_anchor)
    : arr_(arr), anchor_(start_anchor) {
  SURF_CHECK(arr_.dart_alive(start_anchor), "builder anchor must be a live dart");
}

int32_t Arrangement::CurveBuilder::find_on_face(const std::function<bool(int32_t)>& pred) const {
  // Until the curve closes, the face around its dangling end is one region
  // whose boundary cycle is broken twice: at the first crossing's pending
  // closing slot and at the tip of the out-arc under construction.  The walk
  // continues across the first break (the eventual wiring there is
  // first_gR -> closing back-arc -> first_gL) and stops at the tip.
  int32_t d = anchor_;
  int guard = 0;
  bool jumped = false;
  while (true) {
    arr_.add_ops(1);
    if (pred(d)) return d;
    int32_t t = arr_.twin_[d];
    int32_t nxt = arr_.next_[t];
    if (nxt == anchor_) return -1;  // full cycle
    if (nxt == -1) {
      if (t == first_gR_ && !jumped && first_gL_ != -1) {
        jumped = true;
        d = first_gL_;
        if (pred(d)) return d;
        nxt = arr_.next_[arr_.twin_[d]];
        if (nxt == -1 || nxt == anchor_) return -1;
        d = nxt;
        continue;
      }
      return -1;  // tip of the pending out-arc
    }
    d = nxt;
    SURF_CHECK(++guard <= 3 * arr_.num_dart_slots() + 8, "runaway face walk");
  }
}

int32_t Arrangement::CurveBuilder::find_gate(int32_t base_edge, int base_dir) const {
  return find_on_face([&](int32_t d) {
    return arr_.kind_[d] == EdgeKind::Graph && arr_.owner_[d] == base_edge &&
           arr_.dir_[d] == base_dir;
  });
}

void Arrangement::CurveBuilder::cross(int32_t gate) {
  Arrangement& A = arr_;
  SURF_CHECK(A.dart_alive(gate), "gate dart not alive");
  SURF_CHECK(!(A.kind_[gate] == EdgeKind::Graph && A.base().map().is_boundary_edge(A.owner_[gate])),
             "curves may not cross hole boundary edges");

  int32_t gate_twin = A.twin_[gate];
  int32_t x = A.subdivide(gate);
  int32_t gL = A.twin_[gate_twin];  // continues the gate's direction (toward old head)
  int32_t gR = A.twin_[gate];       // points back toward the gate's tail

  auto [out, back_of_out] = A.alloc_two();
  A.kind_[out] = A.kind_[back_of_out] = EdgeKind::Curve;
  A.owner_[out] = A.owner_[back_of_out] = -1;  // set at close
  A.forward_[out] = 1;
  A.forward_[back_of_out] = 0;
  A.origin_[out] = x;

  auto wire = [&](int32_t a, int32_t b) {
    A.next_[a] = b;
    A.prev_[b] = a;
  };
  // clockwise rotation at x: out -> gR -> back(previous arc) -> gL -> out
  if (pending_back_ == -1) {
    first_vertex_ = x;
    first_gR_ = gR;
    first_gL_ = gL;
    first_out_ = out;
    wire(out, gR);
    wire(gL, out);
    A.next_[gR] = -1;  // awaits the closing back-arc
    A.prev_[gL] = -1;
  } else {
    A.origin_[pending_back_] = x;
    wire(out, gR);
    wire(gR, pending_back_);
    wire(pending_back_, gL);
    wire(gL, out);
  }
  A.vdart_[x] = out;
  pending_back_ = back_of_out;
  made_.push_back(x);
  anchor_ = gR;  // left face of gR = the face the curve just entered
}

int Arrangement::CurveBuilder::close() {
  Arrangement& A = arr_;
  SURF_CHECK(!made_.empty(), "cannot close an empty curve");
  int32_t back = pending_back_;
  A.origin_[back] = first_vertex_;
  A.next_[first_gR_] = back;
  A.prev_[back] = first_gR_;
  A.next_[back] = first_gL_;
  A.prev_[first_gL_] = back;

  int cid = (int)A.curves_.size();
  A.curves_.push_back({});
  CurveRec& rec = A.curves_[cid];
  rec.live = true;
  rec.anchor = A.vdart_[made_.front()];

  int len = 0;
  for (int32_t xv : made_) {
    int32_t out = A.vdart_[xv];
    A.owner_[out] = cid;
    A.owner_[A.twin_[out]] = cid;
    int32_t gl = A.prev_[out];  // rotation: gL -> out
    if (A.kind_[gl] == EdgeKind::Graph) ++len;
  }
  rec.length = len;
  // an arc drawn inside a disk face must split it; the closing arc having
  // the same face on both sides means the requested curve is not drawable
  // on this surface
  {
    int32_t out_dart = A.twin_[back];
    int32_t e = out_dart;
    int guard = 0;
    do {
      e = A.face_next(e);
      SURF_CHECK(e != back, "closing arc does not split its face: curve not drawable here");
      SURF_CHECK(++guard <= 2 * A.num_dart_slots() + 4, "runaway close check");
    } while (e != out_dart);
  }
  A.add_ops((long long)made_.size());
  return cid;
}

// ---------------------------------------------------------------------------

void Arrangement::heal_crossing(int32_t x, int cid) {
  // Removes curve cid's passage through crossing x and re-merges the crossed
  // edge (graph segment or another curve's arc).
  int32_t out = vdart_[x];
  for (int k = 0; k < 4 && !(kind_[out] == EdgeKind::Curve && forward_[out] && owner_[out] == cid);
       ++k)
    out = next_[out];
  SURF_CHECK(kind_[out] == EdgeKind::Curve && forward_[out] && owner_[out] == cid,
             "heal: no out-dart of the curve at this vertex");
  int32_t gR = next_[out];
  int32_t back = next_[gR];
  int32_t gL = next_[back];
  SURF_CHECK(next_[gL] == out, "heal: vertex is not a simple crossing");
  SURF_CHECK(kind_[back] == EdgeKind::Curve && !forward_[back] && owner_[back] == cid,
             "heal: malformed crossing");

  // merge the passing curve's two arcs
  int32_t a_prev = twin_[back];  // forward dart of the incoming arc
  int32_t b_out = twin_[out];    // backward dart of the outgoing arc
  if (a_prev == out) {
    // length-one loop curve: both arc darts die together
  } else {
    twin_[a_prev] = b_out;
    twin_[b_out] = a_prev;
    if (curves_[cid].anchor == out) curves_[cid].anchor = a_prev;
  }
  free_dart(out);
  free_dart(back);

  // merge the crossed edge's halves
  int32_t u = twin_[gR];
  int32_t w = twin_[gL];
  twin_[u] = w;
  twin_[w] = u;
  if (kind_[gR] == EdgeKind::Curve) {
    int c2 = owner_[gR];
    if (curves_[c2].anchor == gR || curves_[c2].anchor == gL)
      curves_[c2].anchor = forward_[u] ? u : w;
  }
  free_dart(gR);
  free_dart(gL);
  free_vertex(x);
  add_ops(1);
}

void Arrangement::delete_curve(int c) {
  SURF_CHECK(curve_live(c), "delete_curve: curve not live");
  std::vector<int32_t> xs;
  for (int32_t a : curve_arcs(c)) xs.push_back(origin_[a]);
  for (int32_t x : xs) heal_crossing(x, c);
  curves_[c].live = false;
  curves_[c].anchor = -1;
}

void Arrangement::reconnect_direct(int32_t fwd, int32_t back) {
  SURF_CHECK(kind_[fwd] == EdgeKind::Curve && forward_[fwd], "reconnect: fwd must be forward arc");
  SURF_CHECK(kind_[back] == EdgeKind::Curve && !forward_[back], "reconnect: back must be backward");
  twin_[fwd] = back;
  twin_[back] = fwd;
  add_ops(1);
}

int32_t Arrangement::reconnect_through(int32_t gate, int32_t fwd, int32_t back) {
  SURF_CHECK(!(kind_[gate] == EdgeKind::Graph && base().map().is_boundary_edge(owner_[gate])),
             "connector may not cross hole boundary edges");
  int32_t gtwin = twin_[gate];
  int32_t x = subdivide(gate);
  int32_t gL = twin_[gtwin];  // continues the gate's direction
  int32_t gR = twin_[gate];   // points back toward the gate's tail
  auto [o, b] = alloc_two();
  int cid = owner_[fwd];
  kind_[o] = kind_[b] = EdgeKind::Curve;
  owner_[o] = owner_[b] = cid;
  forward_[o] = 1;
  forward_[b] = 0;
  origin_[o] = origin_[b] = x;
  twin_[fwd] = b;
  twin_[b] = fwd;
  twin_[o] = back;
  twin_[back] = o;
  auto wire = [&](int32_t p, int32_t q) {
    next_[p] = q;
    prev_[q] = p;
  };
  wire(o, gR);
  wire(gR, b);
  wire(b, gL);
  wire(gL, o);
  vdart_[x] = o;
  add_ops(1);
  return x;
}

std::vector<int> Arrangement::refresh_curve(int c) {
  SURF_CHECK(curve_live(c), "refresh: curve not live");
  std::vector<int32_t> owned;
  for (int32_t d = 0; d < num_dart_slots(); ++d)
    if (alive_[d] && kind_[d] == EdgeKind::Curve && owner_[d] == c && forward_[d])
      owned.push_back(d);
  std::vector<char> seen(num_dart_slots(), 0);
  std::vector<int> ids;
  int32_t anchor0 = curves_[c].anchor;
  // the cycle through the anchor keeps id c
  auto trace_cycle = [&](int32_t a0, int cid) {
    int len = 0;
    int32_t a = a0;
    do {
      seen[a] = 1;
      owner_[a] = cid;
      owner_[twin_[a]] = cid;
      if (kind_[prev_[a]] == EdgeKind::Graph) ++len;  // rotation: gL -> out
      a = next_arc(a);
      add_ops(1);
    } while (a != a0);
    curves_[cid].anchor = a0;
    curves_[cid].length = len;
    curves_[cid].live = true;
  };
  SURF_CHECK(dart_alive(anchor0) && owner_[anchor0] == c && forward_[anchor0],
             "refresh: anchor invalid");
  trace_cycle(anchor0, c);
  ids.push_back(c);
  for (int32_t d : owned) {
    if (seen[d]) continue;
    int nid = (int)curves_.size();
    curves_.push_back({});
    trace_cycle(d, nid);
    ids.push_back(nid);
  }
  return ids;
}

std::vector<int32_t> Arrangement::face_orbit(int32_t d) const {
  std::vector<int32_t> out;
  int32_t e = d;
  do {
    out.push_back(e);
    e = face_next(e);
    add_ops(1);
    SURF_CHECK((int)out.size() <= 2 * num_dart_slots() + 4, "runaway face orbit");
  } while (e != d);
  return out;
}

int Arrangement::insert_cross_curve(const CrossCurve& c) {
  if (c.crossings.empty()) throw SurfError(ErrorCode::DegenerateCurve, "curve crosses no edge");
  const auto& m = base_->map();
  // The curve sits in the face left of its last entered dart before crossing
  // the first edge.  Anchor at any live segment carrying that label.
  int32_t h_last = c.crossings.back();
  int32_t anchor = -1;
  for (int32_t d = 0; d < num_dart_slots() && anchor == -1; ++d) {
    if (alive_[d] && kind_[d] == EdgeKind::Graph && owner_[d] == m.edge_of(h_last) &&
        dir_[d] == (h_last & 1))
      anchor = d;
  }
  SURF_CHECK(anchor != -1, "no live segment of the anchor edge");
  CurveBuilder b(*this, anchor);
  for (int32_t h : c.crossings) {
    int32_t gate = b.find_gate(m.edge_of(h), (h & 1) ^ 1);
    if (gate == -1)
      throw SurfError(ErrorCode::IllegalIntersection, "crossing sequence not realizable here");
    b.cross(gate);
  }
  return b.close();
}

int Arrangement::insert_hole_pushoff(int32_t hole_face_dart) {
  SURF_CHECK(hole_side_[hole_face_dart], "pushoff anchor must lie on a hole face");
  // Hole orbit darts have the hole on their left; each boundary vertex is
  // trivalent with exactly one interior stub.
  std::vector<int32_t> stub_at;  // stub dart (origin = boundary vertex), cyclic
  int32_t d = hole_face_dart;
  do {
    int32_t s = -1;
    for (int32_t cand = next_[d]; cand != d; cand = next_[cand]) {
      if (!is_boundary_graph_dart(cand)) {
        s = cand;
        break;
      }
    }
    SURF_CHECK(s != -1, "boundary vertex without interior stub");
    stub_at.push_back(s);
    d = face_next(d);
    add_ops(1);
  } while (d != hole_face_dart);

  // Traveling parallel to the hole orbit keeps the hole on the curve's left
  // and the interior on its right.  Between consecutive boundary vertices the
  // curve sits in the collar face left of twin(cycle dart); crossing stub i
  // enters from the previous collar, which is the face left of twin(stub_i).
  CurveBuilder b(*this, twin_[stub_at.front()]);
  for (int32_t s : stub_at) {
    int32_t gate = b.find_gate(owner_[s], dir_[twin_[s]]);
    SURF_CHECK(gate != -1, "pushoff gate not found on current face");
    b.cross(gate);
  }
  return b.close();
}

void Arrangement::validate() const {
  for (int32_t d = 0; d < num_dart_slots(); ++d) {
    if (!alive_[d]) continue;
    SURF_CHECK(dart_alive(twin_[d]) && twin_[twin_[d]] == d, "twin broken");
    SURF_CHECK(dart_alive(next_[d]) && prev_[next_[d]] == d, "next/prev broken");
    SURF_CHECK(origin_[d] >= 0 && valive_[origin_[d]], "origin broken");
    SURF_CHECK(origin_[next_[d]] == origin_[d], "rotation leaves vertex");
  }
  for (int32_t v = 0; v < num_vertex_slots(); ++v) {
    if (!valive_[v]) continue;
    SURF_CHECK(dart_alive(vdart_[v]) && origin_[vdart_[v]] == v, "vertex dart broken");
  }
  int V = alive_vertices_, E = alive_darts_ / 2, F = 0;
  std::vector<char> seen(num_dart_slots(), 0);
  for (int32_t d = 0; d < num_dart_slots(); ++d) {
    if (!alive_[d] || seen[d]) continue;
    ++F;
    int32_t e = d;
    do {
      seen[e] = 1;
      e = face_next(e);
    } while (e != d);
  }
  const auto& m = base_->map();
  int chi_base = m.num_vertices() - m.num_edges() + m.num_faces();
  SURF_CHECK(V - E + F == chi_base, "overlay Euler characteristic drifted");
}

}  // namespace surf
