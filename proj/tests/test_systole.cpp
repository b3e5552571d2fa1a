#include "doctest.h"
#include "surf/curve_ops.hpp"
#include "surf/fixtures.hpp"
#include "surf/systole.hpp"

using namespace surf;

TEST_CASE("octahedron is a sphere: no non-contractible curve") {
  CHECK_THROWS_AS(shortest_noncontractible(octahedron()), SurfError);
  try {
    shortest_noncontractible(octahedron());
  } catch (const SurfError& e) {
    CHECK(e.code() == ErrorCode::NoNoncontractibleCurve);
  }
}

TEST_CASE("K7 torus edge-width is 3") {
  // oracle value first: the exhaustive enumeration over simple cycles
  CrossMetricSurface s = dualize(k7_torus());
  auto oracle = brute_force_oracle(s, CyclePredicate::Noncontractible);
  REQUIRE(oracle.has_value());
  CHECK(oracle->length == 3);

  PrimalCycleResult r = shortest_noncontractible(k7_torus());
  CHECK(r.length == 3);
  CHECK(r.walk.length() == 3);
  CHECK(!is_contractible(s, r.dual_curve));
}

TEST_CASE("on the torus shortest nonseparating equals shortest noncontractible") {
  CrossMetricSurface s = dualize(k7_torus());
  CHECK(shortest_nonseparating(s).length == shortest_noncontractible(s).length);
}

TEST_CASE("7x7 grid torus edge-width is 7") {
  Triangulation t = grid_torus(7, 7);
  PrimalCycleResult r = shortest_noncontractible(t);
  CHECK(r.length == 7);
}

TEST_CASE("splitting: torus is NotApplicable") {
  try {
    shortest_splitting(k7_torus());
    CHECK(false);
  } catch (const SurfError& e) {
    CHECK(e.code() == ErrorCode::NotApplicable);
  }
}

TEST_CASE("glued K7: splitting width at least edge-width; witnesses verify") {
  CrossMetricSurface s = dualize(glued_k7());
  SystoleReport rep = systole_report(s);
  CHECK(rep.edge_width >= 1);
  CHECK(rep.nonseparating_width >= rep.edge_width);
  REQUIRE(rep.splitting_width >= 1);
  CHECK(rep.splitting_width >= rep.edge_width);
  // witnesses re-verify their defining properties
  CHECK(!is_contractible(s, rep.edge_width_witness));
  CHECK(!is_separating(s, rep.nonseparating_witness));
  CHECK(is_separating(s, rep.splitting_witness));
  CHECK(!is_contractible(s, rep.splitting_witness));
}

TEST_CASE("oracle equivalence on fixtures") {
  for (auto t : {k7_torus(), canonical_genus(2), glued_k7()}) {
    CrossMetricSurface s = dualize(t);
    auto o1 = brute_force_oracle(s, CyclePredicate::Noncontractible);
    REQUIRE(o1.has_value());
    CHECK(shortest_noncontractible(s).length == o1->length);
    auto o2 = brute_force_oracle(s, CyclePredicate::Nonseparating);
    REQUIRE(o2.has_value());
    CHECK(shortest_nonseparating(s).length == o2->length);
    if (s.genus() >= 2) {
      auto o3 = brute_force_oracle(s, CyclePredicate::Splitting);
      if (o3.has_value()) {
        CHECK(shortest_splitting(s).length == o3->length);
      }
    }
  }
}

TEST_CASE("oracle with always-false predicate returns nothing under budget") {
  CrossMetricSurface s = dualize(tetrahedron());
  // splitting on the sphere: no candidate can be separating AND noncontractible
  auto r = brute_force_oracle(s, CyclePredicate::Noncontractible);
  CHECK(!r.has_value());
  // tiny budget triggers BudgetExceeded on a larger surface
  CrossMetricSurface big = dualize(grid_torus(5, 5));
  CHECK_THROWS_AS(brute_force_oracle(big, CyclePredicate::Splitting, 10), SurfError);
}

TEST_CASE("pruning bound dominates measured edge-width on fixtures") {
  for (auto t : {k7_torus(), grid_torus(5, 5), canonical_genus(2)}) {
    CrossMetricSurface s = dualize(t);
    CycleResult r = shortest_noncontractible(s);
    CHECK((double)r.length <= pruning_bound(s.n(), s.genus()));
  }
}
