#include "surf/pants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "surf/curve_ops.hpp"
#include "surf/systole.hpp"

namespace surf {

namespace {

// For a same-piece tangency: the two darts of the gate edge on the piece's
// right face, in boundary order starting from the piece.  The one-crossing
// loop must enclose the interval between them (which excludes the piece), so
// it crosses the first; the re-route crosses the second.
std::pair<int32_t, int32_t> ordered_gate_sides(const Arrangement& A, int32_t piece,
                                               int32_t gate) {
  int32_t g1 = -1, g2 = -1;
  int32_t z = A.twin(piece);
  int32_t e = z;
  do {
    if (e != z && A.is_graph(e) && A.owner(e) == A.owner(gate)) {
      if (g1 == -1)
        g1 = e;
      else if (g2 == -1)
        g2 = e;
    }
    e = A.face_next(e);
    A.add_ops(1);
  } while (e != z);
  SURF_CHECK(g1 != -1 && g2 != -1, "gate edge must border the right face twice");
  return {g1, g2};
}

}  // namespace

// ---------------------------------------------------------------------------
// ShiftState

ShiftState::ShiftState(const CrossMetricSurface& s) : surface_(&s) {
  SURF_CHECK(s.boundaries() >= 1, "shifting needs a surface with boundary");
  arr_ = std::make_unique<Arrangement>(s);
  arc_info_.resize(arr_->num_dart_slots());
  swept_vertex_.assign(arr_->num_vertex_slots(), 0);
  const CombinatorialMap& m = s.map();
  for (int32_t f : m.hole_faces()) {
    Track t;
    t.origin_hole = f;
    t.arr_id = arr_->insert_hole_pushoff(m.face_dart(f));
    t.snaps.push_back(arr_->crossing_sequence(t.arr_id));
    SURF_CHECK(arr_->curve(t.arr_id).length >= 1, "pushoff must cross at least one edge");
    arc_info_.resize(arr_->num_dart_slots());
    for (int32_t a : arr_->curve_arcs(t.arr_id))
      set_arc_info(a, {-1, -1, 0, (int)tracks_.size()});
    tracks_.push_back(std::move(t));
  }
}

void ShiftState::set_arc_info(int32_t dart, const ArcInfo& info) {
  if ((int)arc_info_.size() <= dart) arc_info_.resize(arr_->num_dart_slots());
  arc_info_[dart] = info;
}

int ShiftState::total_live_length() const {
  int total = 0;
  for (const Track& t : tracks_) total += arr_->curve(t.arr_id).length;
  return total;
}

int ShiftState::min_pushes() const {
  int m = INT32_MAX;
  for (const Track& t : tracks_) m = std::min(m, t.pushes);
  return m;
}

int ShiftState::track_of_curve(int arr_curve) const {
  for (int i = 0; i < (int)tracks_.size(); ++i)
    if (tracks_[i].arr_id == arr_curve) return i;
  return -1;
}

bool ShiftState::consecutive(int32_t a, int32_t b) const {
  if (arr_->owner(a) != arr_->owner(b)) return false;
  return arr_->next_arc(a) == b || arr_->next_arc(b) == a;
}

void ShiftState::scan_track_for_tangency(int track, std::optional<Tangency>& best) const {
  const Arrangement& A = *arr_;
  auto key = [](const Tangency& x) {
    return std::tuple<int32_t, int32_t, int32_t>(std::min(x.piece_a, x.piece_b),
                                                 std::max(x.piece_a, x.piece_b), x.gate);
  };
  auto better = [&](Tangency t) {
    if (!best || key(t) < key(*best)) best = t;
  };
  auto is_live_owner = [&](int cid) {
    for (const Track& t : tracks_)
      if (t.arr_id == cid) return true;
    return false;
  };
  int cid = tracks_[track].arr_id;
  for (int32_t a : A.curve_arcs(cid)) {
    std::vector<int32_t> graph_darts;
    int32_t z = A.twin(a);
    int32_t e = z;
    do {
      if (A.is_curve(e)) {
        if (e != z) {
          SURF_CHECK(!A.forward(e), "a piece faces another piece's right side from its left");
          int32_t b = A.twin(e);  // forward piece having this face on its right
          SURF_CHECK(is_live_owner(A.owner(b)), "ghost arc on a live right face");
          if (!consecutive(a, b))
            better({std::min(a, b), std::max(a, b), -1, A.owner(a) == A.owner(b)});
        }
      } else {
        graph_darts.push_back(e);
      }
      e = A.face_next(e);
      A.add_ops(1);
    } while (e != z);
    for (int32_t g : graph_darts) {
      if (A.is_boundary_graph_dart(g)) continue;
      int32_t gt = A.twin(g);
      int32_t f = gt;
      do {
        if (A.is_curve(f) && !A.forward(f)) {
          int32_t b = A.twin(f);
          if (is_live_owner(A.owner(b))) {
            if (b != a && !consecutive(a, b)) {
              better({a, b, g, A.owner(a) == A.owner(b)});
            } else if (b == a &&
                       A.vertex_kind(A.origin(g)) == Arrangement::VertexKind::Graph &&
                       A.vertex_kind(A.origin(gt)) == Arrangement::VertexKind::Graph) {
              // the piece wraps this edge and faces itself across it; gates
              // hanging off the piece's own crossings are the curve's pinch
              // corners, not tangencies
              better({a, a, g, true});
            }
          }
        }
        f = A.face_next(f);
        A.add_ops(1);
      } while (f != gt);
    }
  }
}

std::optional<Tangency> ShiftState::detect_tangency() const {
  std::optional<Tangency> best;
  for (int i = 0; i < (int)tracks_.size(); ++i) scan_track_for_tangency(i, best);
  return best;
}

std::optional<Tangency> ShiftState::detect_tangency_near(int track) const {
  std::optional<Tangency> best;
  scan_track_for_tangency(track, best);
  return best;
}

void ShiftState::shift_one(int track, BoundLedger& ledger) {
  Arrangement& A = *arr_;
  Track& tr = tracks_[track];
  std::vector<int32_t> arcs = A.curve_arcs(tr.arr_id);

  // the right contour: concatenation of the graph portions of the right faces
  std::vector<char> marked(A.num_dart_slots(), 0);
  std::vector<int32_t> contour, contour_arc;
  for (int32_t a : arcs) {
    int32_t z = A.face_next(A.twin(a));
    while (z != A.twin(a)) {
      SURF_CHECK(A.is_graph(z), "tangency missed: curve dart on a right corridor");
      SURF_CHECK(!A.on_hole_boundary(z) && !A.on_hole_boundary(A.twin(z)),
                 "front touched a hole boundary");
      contour.push_back(z);
      contour_arc.push_back(a);
      marked[z] = marked[A.twin(z)] = 1;
      z = A.face_next(z);
      A.add_ops(1);
    }
  }
  SURF_CHECK(!contour.empty(), "empty contour: corridor degenerated");

  // swept area = fresh contour vertices (each vertex is swept at most once)
  // pinch darts at the curve's own crossings also appear on the contour;
  // the swept vertices are the graph vertices along it
  if ((int)swept_vertex_.size() < A.num_vertex_slots())
    swept_vertex_.resize(A.num_vertex_slots(), 0);
  long long area = 0;
  for (int32_t z : contour) {
    int32_t v = A.origin(z);
    if (A.vertex_kind(v) != Arrangement::VertexKind::Graph) continue;
    if (!swept_vertex_[v]) {
      swept_vertex_[v] = 1;
      ++area;
    }
  }
  swept_total_ += area;

  std::map<int32_t, int32_t> dart_to_arc;
  for (size_t i = 0; i < contour.size(); ++i) {
    dart_to_arc[contour[i]] = contour_arc[i];
    dart_to_arc[A.twin(contour[i])] = contour_arc[i];
  }

  // trace the far side of the contour: slide counterclockwise around the
  // marked subgraph; unmarked darts at contour vertices are the stubs the
  // pushed curve crosses, in order
  int32_t t0 = -1;
  for (size_t i = 0; i < contour.size() && t0 == -1; ++i) {
    int32_t w = A.origin(contour[i]);
    if (A.vertex_kind(w) != Arrangement::VertexKind::Graph) continue;  // pinch ends
    int32_t d0 = A.vertex_dart(w), d = d0;
    do {
      if (!marked[d]) {
        SURF_CHECK(A.is_graph(d), "unmarked curve dart at a contour vertex");
        t0 = d;
        break;
      }
      d = A.next(d);
    } while (d != d0);
  }
  SURF_CHECK(t0 != -1, "front has nowhere to go: no unmarked stub on the contour");

  struct Gate {
    int32_t stub, base, wall, behind;
  };
  std::vector<Gate> gates;
  {
    int32_t cur = t0;
    int32_t last_slid = -1;
    long long guard = 0;
    do {
      int32_t d = A.prev(cur);
      while (marked[d]) {
        SURF_CHECK(A.is_graph(d), "slide hit a curve dart");
        last_slid = d;
        d = A.prev(A.twin(d));
        A.add_ops(1);
        SURF_CHECK(++guard < 8LL * A.num_dart_slots() + 64, "runaway contour trace");
      }
      SURF_CHECK(A.is_graph(d) && !A.is_boundary_graph_dart(d), "trace emitted a bad dart");
      cur = d;
      gates.push_back({cur, A.origin(cur), last_slid,
                       last_slid == -1 ? -1 : dart_to_arc.at(last_slid)});
      SURF_CHECK((int)gates.size() <= A.num_dart_slots(), "runaway gate emission");
    } while (cur != t0);
  }
  // walls persist across emissions; patch leading -1 entries cyclically
  for (size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].wall == -1) {
      const Gate& prev = gates[(i + gates.size() - 1) % gates.size()];
      SURF_CHECK(prev.wall != -1 || gates.size() > 1, "no wall anywhere on the trace");
      gates[i].wall = prev.wall;
      gates[i].behind = prev.behind;
    }
  }
  SURF_CHECK(gates.front().wall != -1, "trace found no wall");

  // insert the new curve (crossing each stub near its contour vertex)
  Arrangement::CurveBuilder b(A, A.twin(gates.front().wall));
  for (const Gate& g : gates) {
    int32_t owner = A.owner(g.stub);
    int32_t base = g.base;
    int32_t gd = b.find_on_face([&](int32_t d) {
      return A.is_graph(d) && A.owner(d) == owner &&
             (A.origin(d) == base || A.origin(A.twin(d)) == base);
    });
    SURF_CHECK(gd != -1, "push gate not found on the current face");
    b.cross(gd);
  }
  int new_id = b.close();

  ledger.require(area >= A.curve(new_id).length,
                 "swept annulus area smaller than the pushed curve length");

  std::vector<int32_t> new_arcs = A.curve_arcs(new_id);
  SURF_CHECK(new_arcs.size() == gates.size(), "arc count mismatch after push");
  arc_info_.resize(A.num_dart_slots());
  for (size_t k = 0; k < new_arcs.size(); ++k) {
    const Gate& g_next = gates[(k + 1) % gates.size()];
    set_arc_info(new_arcs[k], {g_next.wall, g_next.behind, tr.pushes + 1, track});
  }

  tr.ghost_ids.push_back(tr.arr_id);
  tr.arr_id = new_id;
  tr.pushes += 1;
  tr.snaps.push_back(A.crossing_sequence(new_id));
  SURF_CHECK((int)tr.snaps.size() == tr.pushes + 1, "snapshot bookkeeping broken");
}

void ShiftState::shift_right(BoundLedger& ledger) {
  if (detect_tangency())
    throw SurfError(ErrorCode::TangencyPresent, "resolve tangencies before shifting");
  std::vector<int> order(tracks_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int bb) { return tracks_[a].pushes < tracks_[bb].pushes; });
  for (int i : order) {
    shift_one(i, ledger);
    if (detect_tangency_near(i)) break;  // caller must resolve before continuing
  }
}

int ShiftState::choose_s(int ell) const {
  // U_c sums the level-c snapshots; curves lagging behind level c (blocked by
  // a deferred tangency at exit time) contribute their latest position
  int cap = 0;
  for (const Track& t : tracks_) cap = std::max(cap, t.pushes);
  long long u0 = 0;
  for (const Track& t : tracks_) u0 += t.snaps[0].length();
  if (u0 > ell)
    throw SurfError(ErrorCode::InitialBoundaryTooLong, "initial boundary exceeds the budget");
  int s = 0;
  for (int c = 0; c <= cap; ++c) {
    long long u = 0;
    for (const Track& t : tracks_) u += t.snaps[std::min(c, t.pushes)].length();
    if (u <= ell) s = c;
  }
  return s;
}

RewireOutcome ShiftState::rewire(const Tangency& t, BoundLedger& ledger) {
  (void)ledger;
  Arrangement& A = *arr_;
  int32_t pa = t.piece_a, pb = t.piece_b;
  SURF_CHECK(A.is_curve(pa) && A.forward(pa) && A.is_curve(pb) && A.forward(pb),
             "rewire needs forward pieces");
  if (!t.same_curve) {
    exit_tangency_ = t;
    exit_outcome_ = RewireOutcome::Merged;
    exited_ = true;
    return RewireOutcome::Merged;
  }

  int cid = A.owner(pa);
  int track = track_of_curve(cid);
  SURF_CHECK(track >= 0, "rewire on a non-live curve");
  int32_t ta = A.twin(pa), tb = A.twin(pb);
  int32_t x1 = -1, x2 = -1;
  bool same_piece = (pa == pb);
  std::vector<int> ids;
  if (same_piece) {
    // the piece faces itself across the gate: a one-crossing loop takes over
    // the wrapped middle, then one crossing re-routes the rest of the curve
    // through the gate.  The loop goes in first, crossing the gate side whose
    // enclosed interval avoids the piece.
    SURF_CHECK(t.gate != -1, "same-piece tangency needs a gate");
    auto [gfirst, gsecond] = ordered_gate_sides(A, pa, t.gate);
    Arrangement::CurveBuilder loop(A, gsecond);
    loop.cross(gsecond);
    x2 = loop.last_vertex();
    int loop_id = loop.close();
    set_arc_info(A.vertex_dart(x2), arc_info_[pa]);
    x1 = A.reconnect_through(gfirst, pa, ta);
    set_arc_info(A.vertex_dart(x1), arc_info_[pa]);
    std::vector<int> main_ids = A.refresh_curve(cid);
    SURF_CHECK(main_ids.size() == 1, "mid-arc crossing must keep one cycle");
    ids = {cid, loop_id};
  } else if (t.gate == -1) {
    A.reconnect_direct(pa, tb);
    A.reconnect_direct(pb, ta);
    ids = A.refresh_curve(cid);
  } else {
    // the second connector crosses the gate's head piece so the chords nest
    int32_t gate2 = A.twin(t.gate);
    x1 = A.reconnect_through(t.gate, pa, tb);
    x2 = A.reconnect_through(gate2, pb, ta);
    set_arc_info(A.vertex_dart(x1), arc_info_[pa]);
    set_arc_info(A.vertex_dart(x2), arc_info_[pb]);
    ids = A.refresh_curve(cid);
  }
  SURF_CHECK(ids.size() == 2, "same-curve rewire must yield exactly two cycles");

  for (int side = 0; side < 2; ++side) {
    TandemResult res = tandem_contractibility(A, ids[side]);
    if (!res.contractible) continue;
    discarded_area_ += res.disk->interior_vertices;
    A.delete_curve(ids[side]);
    tracks_[track].arr_id = ids[1 - side];
    Track& tr = tracks_[track];
    tr.snaps[tr.pushes] = A.crossing_sequence(tr.arr_id);
    SURF_CHECK(A.curve(tr.arr_id).length >= 1, "surviving curve lost all crossings");
    return RewireOutcome::ContinuedAfterDiscard;
  }

  // both essential: undo the surgery and enter the splitting phase
  if (same_piece) {
    A.delete_curve(ids[1]);
    A.heal_one_crossing(x1, A.owner(A.vertex_dart(x1)));
  } else if (t.gate == -1) {
    A.reconnect_direct(pa, ta);
    A.reconnect_direct(pb, tb);
  } else {
    A.heal_one_crossing(x1, A.owner(A.vertex_dart(x1)));
    A.heal_one_crossing(x2, A.owner(A.vertex_dart(x2)));
    A.reconnect_direct(pa, ta);
    A.reconnect_direct(pb, tb);
  }
  std::vector<int> restored = A.refresh_curve(cid);
  SURF_CHECK(restored.size() == 1, "un-rewire failed to restore one cycle");
  if (!same_piece) A.forget_curve(ids[1]);
  exit_tangency_ = t;
  exit_outcome_ = RewireOutcome::Split;
  exited_ = true;
  return RewireOutcome::Split;
}

std::vector<int> ShiftState::apply_exit_rewire() {
  SURF_CHECK(exited_, "no exit tangency to apply");
  Arrangement& A = *arr_;
  const Tangency& t = exit_tangency_;
  int32_t pa = t.piece_a, pb = t.piece_b;
  int32_t ta = A.twin(pa), tb = A.twin(pb);
  if (exit_outcome_ == RewireOutcome::Split && pa == pb) {
    int cid = A.owner(pa);
    auto [gfirst, gsecond] = ordered_gate_sides(A, pa, t.gate);
    Arrangement::CurveBuilder loop(A, gsecond);
    loop.cross(gsecond);
    int loop_id = loop.close();
    A.reconnect_through(gfirst, pa, ta);
    std::vector<int> ids = A.refresh_curve(cid);
    SURF_CHECK(ids.size() == 1, "mid-arc crossing must keep one cycle");
    return {cid, loop_id};
  }
  if (exit_outcome_ == RewireOutcome::Split) {
    int cid = A.owner(pa);
    if (t.gate == -1) {
      A.reconnect_direct(pa, tb);
      A.reconnect_direct(pb, ta);
    } else {
      int32_t gate2 = A.twin(t.gate);  // before the first connector subdivides
      A.reconnect_through(t.gate, pa, tb);
      A.reconnect_through(gate2, pb, ta);
    }
    std::vector<int> ids = A.refresh_curve(cid);
    SURF_CHECK(ids.size() == 2, "split rewire must yield two cycles");
    return ids;
  }
  // merge: two distinct curves become one
  int ca = A.owner(pa), cb = A.owner(pb);
  SURF_CHECK(ca != cb, "merge needs two curves");
  if (t.gate == -1) {
    A.reconnect_direct(pa, tb);
    A.reconnect_direct(pb, ta);
  } else {
    int32_t gate2 = A.twin(t.gate);
    A.reconnect_through(t.gate, pa, tb);
    A.reconnect_through(gate2, pb, ta);
  }
  std::vector<int> ids = A.refresh_curve(ca);
  SURF_CHECK(ids.size() == 1, "merge rewire must yield one cycle");
  A.forget_curve(cb);
  return ids;
}

// ---------------------------------------------------------------------------
// Phase construction

namespace {

struct RouteEntry {
  int32_t exact = -1;        // preferred gate: this dart, or its live twin
  int32_t graph_owner = -1;  // fallback: any segment of this original edge
  int curve_owner = -1;      // fallback: any arc of this curve
  int32_t near_vertex = -1;  // fallback filter: prefer incidence to this vertex
  int backref = -1;          // partner crossing made earlier in this route
  const std::vector<int32_t>* peer = nullptr;  // partner crossings of a
  int peer_index = -1;                         // previously inserted route
};

// Routes are built from exact darts whose LEFT face is the face the curve
// occupies just before the crossing.  A second lane over the same corridor
// cannot know its darts in advance (the first lane subdivides them); it
// carries partner references and resolves against the current face.
struct PeelResult {
  std::vector<RouteEntry> down;  // from just right of the piece to level s
  int32_t attach_arc = -1;
  int crossings = 0;  // graph crossings
};

RouteEntry exact_entry(const Arrangement& A, int32_t gate) {
  RouteEntry e;
  e.exact = gate;
  if (A.is_graph(gate))
    e.graph_owner = A.owner(gate);
  else
    e.curve_owner = A.owner(gate);
  return e;
}

PeelResult peel(const ShiftState& st, int32_t piece, int s_level) {
  const Arrangement& A = st.arrangement();
  PeelResult out;
  int32_t a = piece;
  if (st.arc_info(a).layer <= s_level) {
    out.attach_arc = a;
    return out;
  }
  out.down.push_back(exact_entry(A, A.twin(a)));  // cross the piece right-to-left
  while (true) {
    const ShiftState::ArcInfo& info = st.arc_info(a);
    SURF_CHECK(info.layer > s_level, "peel descended past the target level");
    SURF_CHECK(info.back_wall != -1, "arc without a back-wall record");
    out.down.push_back(exact_entry(A, A.twin(info.back_wall)));
    out.crossings += 1;
    int32_t b = info.behind;
    SURF_CHECK(b != -1 && A.dart_alive(b), "stale behind-arc record");
    if (st.arc_info(b).layer <= s_level) {
      out.attach_arc = b;
      return out;
    }
    out.down.push_back(exact_entry(A, A.twin(b)));
    a = b;
  }
}

// the same corridor walked in the opposite direction: reverse and twin
std::vector<RouteEntry> up_route(const Arrangement& A, const std::vector<RouteEntry>& down) {
  std::vector<RouteEntry> out;
  for (auto it = down.rbegin(); it != down.rend(); ++it) {
    RouteEntry e = *it;
    e.exact = A.twin(e.exact);
    out.push_back(e);
  }
  return out;
}

// second pass over a corridor whose darts the partner lane subdivided:
// resolve by owner adjacent to the partner's crossings
std::vector<RouteEntry> paired_route(const std::vector<RouteEntry>& mirror_reversed,
                                     const std::vector<int32_t>* peer_made, int first_index,
                                     bool indices_descend) {
  // mirror_reversed: the entries in the order this lane crosses them; the
  // partner crossed them in the opposite order starting at first_index
  std::vector<RouteEntry> out;
  int n = (int)mirror_reversed.size();
  for (int i = 0; i < n; ++i) {
    RouteEntry e = mirror_reversed[i];
    e.exact = -1;  // stale after the partner's subdivisions
    e.peer = peer_made;
    e.peer_index = indices_descend ? first_index + (n - 1 - i) : first_index + i;
    out.push_back(e);
  }
  return out;
}

// gates beside the level-s curve from arc `from` up to arc `to` (a full loop
// when from == to): the dart whose left face is the corridor right of the arc
std::vector<RouteEntry> parallel_run(const Arrangement& A, int32_t from, int32_t to) {
  std::vector<RouteEntry> out;
  int32_t a = from;
  while (true) {
    int32_t gr = A.graph_right_at_head(a);
    SURF_CHECK(A.is_graph(gr), "level-s curve has a non-graph crossing");
    RouteEntry e = exact_entry(A, A.twin(gr));
    e.near_vertex = A.origin(gr);
    out.push_back(e);
    a = A.next_arc(a);
    if (a == to) break;
  }
  return out;
}

void append(std::vector<RouteEntry>& to, const std::vector<RouteEntry>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

struct InsertedRoute {
  int cid = -1;
  std::vector<int32_t> made;  // crossing vertex per route entry
};

InsertedRoute insert_route(Arrangement& A, int32_t start_anchor,
                           const std::vector<RouteEntry>& route) {
  Arrangement::CurveBuilder b(A, start_anchor);
  InsertedRoute out;
  for (const RouteEntry& e : route) {
    // the exact dart's side matters: crossing its twin flips the lane
    int32_t gd = -1;
    if (e.exact != -1 && A.dart_alive(e.exact))
      gd = b.find_on_face([&](int32_t d) { return d == e.exact; });
    if (gd == -1) {
      int32_t near = e.near_vertex;
      if (e.backref >= 0) near = out.made[e.backref];
      if (e.peer && e.peer_index >= 0) near = (*e.peer)[e.peer_index];
      auto match = [&](int32_t d, bool hinted) {
        bool owner_ok = e.graph_owner >= 0
                            ? (A.is_graph(d) && A.owner(d) == e.graph_owner)
                            : (A.is_curve(d) && A.owner(d) == e.curve_owner);
        if (!owner_ok) return false;
        if (!hinted || near < 0) return true;
        return A.origin(d) == near || A.origin(A.twin(d)) == near;
      };
      gd = b.find_on_face([&](int32_t d) { return match(d, true); });
      if (gd == -1 && near >= 0) gd = b.find_on_face([&](int32_t d) { return match(d, false); });
    }
    SURF_CHECK(gd != -1, "route gate not found on the current face");
    b.cross(gd);
    out.made.push_back(b.last_vertex());
  }
  out.cid = b.close();
  return out;
}

DecompositionStep run_phases(ShiftState& st, int ell, BoundLedger& ledger, int boundary_in) {
  Arrangement& A = st.arrangement();
  const CrossMetricSurface& s = A.base();
  const int n_interior = s.interior_n();
  const Tangency& t = st.exit_tangency();
  const bool split = st.exit_outcome() == RewireOutcome::Split;

  int track1 = st.track_of_curve(A.owner(t.piece_a));
  int track2 = st.track_of_curve(A.owner(t.piece_b));
  SURF_CHECK(track1 >= 0 && track2 >= 0, "exit pieces must belong to live curves");
  SURF_CHECK(split == (track1 == track2), "exit outcome does not match the pieces");

  int r = 0;
  for (int i = 0; i < st.num_tracks(); ++i) r = std::max(r, st.pushes(i));
  int s_level = st.choose_s(ell);

  PeelResult peel1 = peel(st, t.piece_a, s_level);
  PeelResult peel2 = peel(st, t.piece_b, s_level);
  int eta_len = peel1.crossings + peel2.crossings + (t.gate != -1 ? 1 : 0);
  ledger.require(eta_len <= 2 * (r - s_level) + 1, "|eta| exceeds 2(r-s)+1");
  ledger.require((long long)(r - s_level) * ell <= n_interior, "(r-s) ell exceeds n");

  auto level_curve = [&](int track) {
    int lvl = std::min(s_level, st.pushes(track));
    return lvl == st.pushes(track) ? st.live_curve(track) : st.ghosts(track)[lvl];
  };

  std::vector<int> delta_ids;
  const int p1 = (int)peel1.down.size(), p2 = (int)peel2.down.size();
  const int w = (t.gate != -1) ? 1 : 0;
  RouteEntry wit_ab, wit_ba;
  if (w) {
    wit_ab = exact_entry(A, t.gate);          // right-of-a into right-of-b
    wit_ba = exact_entry(A, A.twin(t.gate));  // the other direction
  }
  const bool backtrack_free =
      s_level >= st.pushes(track1) && s_level >= st.pushes(track2);
  if (backtrack_free) {
    // s = r: the rewired curves are the delta curves themselves
    int len_before1 = A.curve(st.live_curve(track1)).length;
    int len_before2 = A.curve(st.live_curve(track2)).length;
    delta_ids = st.apply_exit_rewire();
    if (split) {
      ledger.require(A.curve(delta_ids[0]).length + A.curve(delta_ids[1]).length <=
                         len_before1 + 2 * eta_len,
                     "|d1|+|d2| exceeds |gamma_s| + 2|eta|");
    } else {
      ledger.require(A.curve(delta_ids[0]).length <= len_before1 + len_before2 + 2 * eta_len,
                     "|delta| exceeds |gamma1_s|+|gamma2_s|+2|eta|");
    }
  } else if (split) {
    int cs = level_curve(track1);
    int32_t ga = peel1.attach_arc, gb = peel2.attach_arc;
    SURF_CHECK(A.owner(ga) == cs && A.owner(gb) == cs, "attach arcs must lie on level s");
    // d1 = mu(A->B) . eta(B->A):  [mu-run][up-peel2][wit b->a][down-peel1]
    std::vector<RouteEntry> d1 = parallel_run(A, ga, gb);
    const int m1 = (int)d1.size();
    append(d1, up_route(A, peel2.down));
    if (w) d1.push_back(wit_ba);
    append(d1, peel1.down);
    InsertedRoute r1 = insert_route(A, A.twin(ga), d1);
    // d2 = nu(B->A) . eta(A->B): lanes pair with d1's crossings
    std::vector<RouteEntry> d2;
    if (ga != gb) d2 = parallel_run(A, gb, ga);
    append(d2, paired_route(up_route(A, peel1.down), &r1.made, m1 + p2 + w, true));
    if (w) d2.push_back(wit_ab);  // exact: the gate's head piece, as in rewiring
    append(d2, paired_route(peel2.down, &r1.made, m1, true));
    InsertedRoute r2 = insert_route(A, A.twin(gb), d2);
    A.validate();
    delta_ids = {r1.cid, r2.cid};
    ledger.require(
        A.curve(r1.cid).length + A.curve(r2.cid).length <= A.curve(cs).length + 2 * eta_len,
        "|d1|+|d2| exceeds |gamma_s| + 2|eta|");
  } else {
    int cs1 = level_curve(track1), cs2 = level_curve(track2);
    int32_t ga = peel1.attach_arc, gb = peel2.attach_arc;
    SURF_CHECK(A.owner(ga) == cs1 && A.owner(gb) == cs2, "attach arcs on the wrong curves");
    // delta = loop1 . eta(A->B) . loop2 . eta(B->A)
    std::vector<RouteEntry> d = parallel_run(A, ga, ga);
    const int l1 = (int)d.size();
    append(d, up_route(A, peel1.down));  // indices l1 .. l1+p1-1
    if (w) d.push_back(wit_ab);          // index l1+p1
    append(d, peel2.down);               // indices l1+p1+w .. +p2-1
    append(d, parallel_run(A, gb, gb));
    {
      auto lane = paired_route(up_route(A, peel2.down), nullptr, l1 + p1 + w, true);
      for (auto& e : lane) e.backref = e.peer_index, e.peer = nullptr, e.peer_index = -1;
      append(d, lane);
      if (w) d.push_back(wit_ba);  // exact: the gate's head piece
      auto lane2 = paired_route(peel1.down, nullptr, l1, true);
      for (auto& e : lane2) e.backref = e.peer_index, e.peer = nullptr, e.peer_index = -1;
      append(d, lane2);
    }
    InsertedRoute r = insert_route(A, A.twin(ga), d);
    A.validate();
    delta_ids = {r.cid};
    ledger.require(A.curve(r.cid).length <= A.curve(cs1).length + A.curve(cs2).length + 2 * eta_len,
                   "|delta| exceeds |gamma1_s|+|gamma2_s|+2|eta|");
  }
  // survivors: the level-s snapshots of non-participating tracks, plus delta
  std::vector<int> keep = delta_ids;
  for (int i = 0; i < st.num_tracks(); ++i)
    if (i != track1 && i != track2) keep.push_back(level_curve(i));
  for (int c : A.live_curves())
    if (std::find(keep.begin(), keep.end(), c) == keep.end()) A.delete_curve(c);
  A.validate();

  DecompositionStep step;
  step.s = s_level;
  step.r = r;
  step.eta_length = eta_len;
  step.boundary_in = boundary_in;
  step.swept = st.swept_total();

  std::map<int, int> delta_index;
  for (int id : keep) {
    delta_index[id] = (int)step.delta.size();
    step.delta.push_back(A.crossing_sequence(id));
    step.delta_lengths.push_back(A.curve(id).length);
    ledger.require(A.curve(id).length >= 1, "a delta curve has length zero");
  }

  step.cut = cut_along(A, keep);

  std::vector<int32_t> participant_holes{st.origin_hole_face(track1)};
  if (!split) participant_holes.push_back(st.origin_hole_face(track2));
  int boundary_out = 0;
  for (int ci = 0; ci < (int)step.cut.components.size(); ++ci) {
    const CutComponent& comp = step.cut.components[ci];
    SurfaceClass ccls = classify(comp.surface.map());
    ledger.require(!ccls.is_disk, "cutting produced a disk component");
    bool has_participant_hole = false;
    for (int32_t f : comp.hole_base_face)
      for (int32_t ph : participant_holes)
        if (f == ph) has_participant_hole = true;
    if (has_participant_hole) {
      SURF_CHECK(step.pants_component == -1, "participant holes split across components");
      step.pants_component = ci;
      ledger.require(ccls.is_pants, "the discarded component is not a pair of pants");
    } else if (ccls.is_annulus) {
      step.annulus_components.push_back(ci);
    } else {
      step.remainder_components.push_back(ci);
      const CombinatorialMap& mm = comp.surface.map();
      for (size_t h = 0; h < comp.hole_curve.size(); ++h) {
        SURF_CHECK(comp.hole_curve[h] >= 0, "remainder component has an inherited hole");
        boundary_out += mm.face_degree(mm.hole_faces()[h]);
      }
    }
    std::vector<int> hd;
    for (int hc : comp.hole_curve) hd.push_back(hc >= 0 ? delta_index.at(hc) : -1);
    step.hole_delta_index.push_back(std::move(hd));
  }
  SURF_CHECK(step.pants_component != -1, "no pants component found");
  step.boundary_out = boundary_out;
  // |bd S'| <= ell + 4n/ell + 2 and <= ell + 2|eta|, as exact integers
  ledger.require(
      (long long)boundary_out * ell <= (long long)ell * ell + 4LL * n_interior + 2LL * ell,
      "|bd S'| exceeds ell + 4n/ell + 2");
  ledger.require(boundary_out <= ell + 2 * eta_len, "|bd S'| exceeds ell + 2|eta|");

  long long total = 0;
  for (auto& comp : step.cut.components) total += comp.surface.interior_n();
  SURF_CHECK(total == n_interior, "interior vertices not conserved by the cut");
  step.ops = A.ops();
  return step;
}

}  // namespace

DecompositionStep splitting_phase(ShiftState& st, int ell, BoundLedger& ledger) {
  if (!st.exited() || st.exit_outcome() != RewireOutcome::Split)
    throw SurfError(ErrorCode::NotInSplitState, "last rewire was not a split");
  return run_phases(st, ell, ledger, st.total_live_length());
}

DecompositionStep merging_phase(ShiftState& st, int ell, BoundLedger& ledger) {
  if (!st.exited() || st.exit_outcome() != RewireOutcome::Merged)
    throw SurfError(ErrorCode::NotInMergeState, "last rewire was not a merge");
  return run_phases(st, ell, ledger, st.total_live_length());
}

DecompositionStep decompose_step(const CrossMetricSurface& s, int ell, BoundLedger& ledger) {
  if (ell < 1) throw SurfError(ErrorCode::InitialBoundaryTooLong, "budget must be positive");
  SurfaceClass cls = classify(s.map());
  if (cls.boundaries == 0 || cls.is_disk || cls.is_annulus || cls.is_pants)
    throw SurfError(ErrorCode::ComponentNotDecomposable,
                    "component admits no pants decomposition step");

  ShiftState st(s);
  const int boundary_in = st.total_live_length();
  if (boundary_in > ell)
    throw SurfError(ErrorCode::InitialBoundaryTooLong, "|bd S| exceeds ell");

  const long long n = s.interior_n();
  std::optional<Tangency> pending = st.detect_tangency();
  long long guard = 0;
  while (true) {
    SURF_CHECK(++guard < 64LL * (n + 8) * (n + 8), "shifting failed to terminate");
    if (pending) {
      RewireOutcome outcome = st.rewire(*pending, ledger);
      if (outcome != RewireOutcome::ContinuedAfterDiscard) break;
      pending = st.detect_tangency();
      continue;
    }
    int pick = 0;
    for (int i = 1; i < st.num_tracks(); ++i)
      if (st.pushes(i) < st.pushes(pick)) pick = i;
    st.shift_one(pick, ledger);
    pending = st.detect_tangency_near(pick);
    if (!pending) pending = st.detect_tangency();
  }

  // complete the round: curves not touched by any tangency may still take
  // their step, so the exit happens at a round boundary whenever possible
  {
    int target = 0;
    for (int i = 0; i < st.num_tracks(); ++i) target = std::max(target, st.pushes(i));
    bool progress = true;
    while (progress) {
      progress = false;
      for (int i = 0; i < st.num_tracks(); ++i) {
        if (st.pushes(i) >= target) continue;
        if (st.detect_tangency_near(i)) continue;  // deferred: blocked by a tangency
        st.shift_one(i, ledger);
        progress = true;
      }
    }
  }
  return run_phases(st, ell, ledger, boundary_in);
}

// ---------------------------------------------------------------------------
// Theorem driver

namespace {

struct Piece {
  CrossMetricSurface surface;
  std::vector<int32_t> to_root;
  std::vector<int> hole_registry;
};

long long isqrt_floor(long long x) {
  long long r = (long long)std::sqrt((double)x);
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace

PantsDecomposition pants_decomposition(const CrossMetricSurface& s, bool hard_bounds,
                                       bool want_trace) {
  const int g = s.genus();
  const long long n = s.n();
  if (s.boundaries() != 0)
    throw SurfError(ErrorCode::GenusTooSmall, "driver expects a surface without boundary");
  if (g < 2)
    throw SurfError(ErrorCode::GenusTooSmall, "spheres and tori admit no pants decomposition");

  BoundLedger ledger;
  ledger.hard = hard_bounds;

  CycleResult systole = shortest_noncontractible(s);
  long long C = 8;
  auto ell = [&](int k) { return isqrt_floor(C * C * (long long)k * n); };
  for (;;) {
    bool ok = 2LL * systole.length <= ell(1);
    for (int k = 1; ok && k + 1 <= 3 * g - 3; ++k) {
      long long lk = ell(k), lk1 = ell(k + 1);
      if (lk < 1 || (lk + 2) * lk + 4 * n > lk1 * lk) ok = false;
    }
    if (ok) break;
    C *= 2;
    SURF_CHECK(C < (1LL << 20), "schedule constant failed to stabilize");
  }

  PantsDecomposition out;
  out.schedule_constant = (double)C;
  out.per_curve_constant = (double)C * std::sqrt(2.0);

  struct Registry {
    std::vector<PantsCurve> curves;
    std::vector<int> uf;
    int find(int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); }
    void unite(int a, int b) { uf[find(a)] = find(b); }
    int add(PantsCurve c) {
      curves.push_back(std::move(c));
      uf.push_back((int)uf.size());
      return (int)uf.size() - 1;
    }
  } reg;

  reg.add({systole.curve, systole.length, 0});

  std::vector<Piece> queue;
  {
    Overlay ov(s);
    int cid = ov.arr.insert_cross_curve(systole.curve);
    CutResult first = cut_along(ov.arr, {cid});
    for (auto& comp : first.components) {
      Piece p{std::move(comp.surface), comp.base_dart, {}};
      p.hole_registry.assign(p.surface.map().num_boundaries(), 0);
      queue.push_back(std::move(p));
    }
  }

  std::vector<std::array<int, 3>> pants_list;
  int k = 0;
  long long total_ops = 0, total_swept = 0;
  size_t qi = 0;
  while (qi < queue.size()) {
    Piece piece = std::move(queue[qi++]);
    SurfaceClass cls = classify(piece.surface.map());
    ledger.require(!cls.is_disk, "cascade produced a disk");
    if (cls.is_annulus) {
      reg.unite(piece.hole_registry[0], piece.hole_registry[1]);
      continue;
    }
    if (cls.is_pants) {
      pants_list.push_back(
          {piece.hole_registry[0], piece.hole_registry[1], piece.hole_registry[2]});
      continue;
    }
    ++k;
    SURF_CHECK(k <= 2 * g - 2, "more applications than pairs of pants");
    long long lk = ell(k);
    int bd = 0;
    for (int32_t f : piece.surface.map().hole_faces())
      bd += piece.surface.map().face_degree(f);
    ledger.require(bd <= lk, "piece boundary exceeds ell_k");

    DecompositionStep step = decompose_step(piece.surface, (int)lk, ledger);
    total_ops += step.ops;
    total_swept += step.swept;
    if (want_trace) {
      std::ostringstream os;
      os << "{\"round\":" << k << ",\"ell\":" << lk << ",\"r\":" << step.r
         << ",\"s\":" << step.s << ",\"eta\":" << step.eta_length
         << ",\"boundary_in\":" << step.boundary_in << ",\"boundary_out\":" << step.boundary_out
         << ",\"swept\":" << step.swept << ",\"curves\":" << step.delta.size() << "}";
      out.trace.push_back(os.str());
    }

    std::vector<int> delta_reg(step.delta.size(), -1);
    for (size_t di = 0; di < step.delta.size(); ++di) {
      PantsCurve c;
      for (int32_t h : step.delta[di].crossings) {
        SURF_CHECK(piece.to_root[h] >= 0, "delta crossing without root correspondence");
        c.on_root.crossings.push_back(piece.to_root[h]);
      }
      c.length = step.delta_lengths[di];
      c.round = k;
      ledger.require(c.length <= ell(k + 1), "delta curve exceeds ell_{k+1}");
      delta_reg[di] = reg.add(std::move(c));
    }
    for (int ci = 0; ci < (int)step.cut.components.size(); ++ci) {
      CutComponent& comp = step.cut.components[ci];
      std::vector<int32_t> to_root(comp.base_dart.size(), -1);
      for (size_t d = 0; d < comp.base_dart.size(); ++d)
        if (comp.base_dart[d] >= 0) to_root[d] = piece.to_root[comp.base_dart[d]];
      std::vector<int> hole_reg(comp.surface.map().num_boundaries(), -1);
      for (size_t h = 0; h < hole_reg.size(); ++h) {
        int di = step.hole_delta_index[ci][h];
        if (di >= 0) {
          hole_reg[h] = delta_reg[di];
        } else {
          int32_t base_face = comp.hole_base_face[h];
          const auto& holes = piece.surface.map().hole_faces();
          auto it = std::lower_bound(holes.begin(), holes.end(), base_face);
          SURF_CHECK(it != holes.end() && *it == base_face, "inherited hole not found");
          hole_reg[h] = piece.hole_registry[it - holes.begin()];
        }
      }
      queue.push_back({std::move(comp.surface), std::move(to_root), std::move(hole_reg)});
    }
  }

  out.applications = k;
  SURF_CHECK((int)pants_list.size() == 2 * g - 2, "pants count must be 2g-2");

  std::map<int, int> rep;
  for (int i = 0; i < (int)reg.curves.size(); ++i) {
    int root = reg.find(i);
    auto it = rep.find(root);
    if (it == rep.end() || reg.curves[i].length < reg.curves[it->second].length)
      rep[root] = i;
  }
  SURF_CHECK((int)rep.size() == 3 * g - 3, "deduplicated curve count must be 3g-3");
  std::map<int, int> cuffs;
  for (auto& pl : pants_list)
    for (int id : pl) cuffs[reg.find(id)] += 1;
  SURF_CHECK((int)cuffs.size() == 3 * g - 3, "cuff classes must be 3g-3");
  for (auto& [root, cnt] : cuffs)
    SURF_CHECK(cnt == 2, "a cuff class does not glue exactly two pants");

  for (auto& [root, id] : rep) {
    long long len = reg.curves[id].length;
    ledger.require(len * len <= 2LL * C * C * g * n, "curve length exceeds C sqrt(2 g n)");
    out.curves.push_back(reg.curves[id]);
  }
  std::sort(out.curves.begin(), out.curves.end(), [](const PantsCurve& a, const PantsCurve& b) {
    return std::tie(a.round, a.length) < std::tie(b.round, b.length);
  });
  out.total_ops = total_ops;
  out.total_swept = total_swept;
  out.violations = std::move(ledger.violations);
  return out;
}

}  // namespace surf
