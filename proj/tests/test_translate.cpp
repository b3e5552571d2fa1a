#include <cmath>

#include "doctest.h"
#include "surf/curve_ops.hpp"
#include "surf/fixtures.hpp"
#include "surf/systole.hpp"
#include "surf/translate.hpp"

using namespace surf;

TEST_CASE("equilateral metric lengths") {
  PrimalWalk w0;
  CHECK(equilateral_length(w0).value == doctest::Approx(0.0));
  PrimalWalk w1{{0}};
  CHECK(equilateral_length(w1).value == doctest::Approx(2.0 / std::pow(3.0, 0.25)));
  CHECK(equilateral_length(w1).value == doctest::Approx(1.5197).epsilon(1e-4));
  PrimalWalk w3{{0, 1, 2}};
  CHECK(equilateral_length(w3).value == doctest::Approx(6.0 / std::pow(3.0, 0.25)));
}

TEST_CASE("degenerate curve cannot be snapped") {
  CrossCurve empty;
  CHECK_THROWS_AS(snap_to_primal(k7_torus(), empty), SurfError);
}

TEST_CASE("dual face boundary snaps to a short contractible walk") {
  Triangulation t = k7_torus();
  CrossMetricSurface s = dualize(t);
  // curve around dual vertex 0 = around triangle 0: crosses its 3 dual edges
  CrossCurve c;
  for (int32_t d : s.map().vertex_orbit(0)) c.crossings.push_back(s.map().twin(d));
  PrimalWalk w = snap_to_primal(t, c);
  CHECK(w.length() <= 3);
  CHECK(w.length() <= 2 * c.length());
  auto cls = homology_class_z2(t, w);
  for (auto b : cls) CHECK(b == 0);
}

TEST_CASE("snapping the dual systole of K7 preserves class and length bound") {
  Triangulation t = k7_torus();
  CrossMetricSurface s = dualize(t);
  CycleResult r = shortest_noncontractible(s);
  PrimalWalk w = snap_to_primal(t, r.curve);
  CHECK(w.length() <= 2 * r.length);
  CHECK(homology_class_z2(t, w) == homology_class_z2(s, r.curve));
  // composition with the primal edge-width: snapped dual systole bounds it
  PrimalCycleResult pw = shortest_noncontractible(t);
  CHECK(pw.length <= w.length());
}

TEST_CASE("walk validity: consecutive darts share a vertex") {
  Triangulation t = grid_torus(5, 5);
  CrossMetricSurface s = dualize(t);
  CycleResult r = shortest_noncontractible(s);
  PrimalWalk w = snap_to_primal(t, r.curve);
  REQUIRE(w.length() >= 1);
  const auto& m = t.map();
  for (size_t i = 0; i < w.darts.size(); ++i) {
    int32_t head = m.vertex_of(m.twin(w.darts[i]));
    int32_t tail_next = m.vertex_of(w.darts[(i + 1) % w.darts.size()]);
    CHECK(head == tail_next);
  }
}
