#include <sstream>

#include "doctest.h"
#include "surf/combinatorial_map.hpp"
#include "surf/fixtures.hpp"
#include "surf/io.hpp"

using namespace surf;

TEST_CASE("tetrahedron boundary complex") {
  Triangulation t = tetrahedron();
  const auto& m = t.map();
  CHECK(m.num_vertices() == 4);
  CHECK(m.num_edges() == 6);
  CHECK(m.num_faces() == 4);
  CHECK(m.genus() == 0);
  CHECK(m.num_boundaries() == 0);
  CHECK(t.n() == 4);
}

TEST_CASE("K7 triangulation of the torus") {
  Triangulation t = k7_torus();
  const auto& m = t.map();
  CHECK(m.num_vertices() == 7);
  CHECK(m.num_edges() == 21);
  CHECK(m.num_faces() == 14);
  CHECK(m.genus() == 1);
  // n = 2v + 4g - 4
  CHECK(t.n() == 2 * 7 + 4 * 1 - 4);
}

TEST_CASE("grid torus counts") {
  Triangulation t = grid_torus(7, 7);
  CHECK(t.map().num_vertices() == 49);
  CHECK(t.map().num_faces() == 98);
  CHECK(t.map().genus() == 1);
}

TEST_CASE("canonical polygon gluings") {
  for (int g = 1; g <= 4; ++g) {
    Triangulation t = canonical_genus(g);
    CHECK(t.map().genus() == g);
    CHECK(t.map().num_vertices() == 2);
    CHECK(t.n() == 4 * g);
    CHECK(t.n() == 2 * t.map().num_vertices() + 4 * g - 4);
  }
}

TEST_CASE("glued K7 tori have genus 2") {
  Triangulation t = glued_k7();
  CHECK(t.map().genus() == 2);
  CHECK(t.map().num_vertices() == 11);
  CHECK(t.map().num_edges() == 39);
  CHECK(t.map().num_faces() == 26);
}

TEST_CASE("twin with a fixed point is rejected") {
  // twin[i] = i is a fixed point
  std::vector<int32_t> twin{0, 1}, next{1, 0};
  CHECK_THROWS_AS(CombinatorialMap(twin, next), SurfError);
  try {
    CombinatorialMap m(twin, next);
  } catch (const SurfError& e) {
    CHECK(e.code() == ErrorCode::NotInvolution);
  }
}

TEST_CASE("non-permutation next is rejected") {
  std::vector<int32_t> twin{1, 0, 3, 2}, next{1, 1, 0, 2};
  try {
    CombinatorialMap m(twin, next);
    CHECK(false);
  } catch (const SurfError& e) {
    CHECK(e.code() == ErrorCode::NotPermutation);
  }
}

TEST_CASE("disconnected map is rejected") {
  // two loose loops: darts 0,1 (vertex A) and 2,3 (vertex B)
  std::vector<int32_t> twin{1, 0, 3, 2}, next{1, 0, 3, 2};
  try {
    CombinatorialMap m(twin, next);
    CHECK(false);
  } catch (const SurfError& e) {
    CHECK(e.code() == ErrorCode::Disconnected);
  }
}

TEST_CASE("dualize swaps vertices and faces, twice is the identity") {
  for (auto t : {tetrahedron(), k7_torus(), canonical_genus(2)}) {
    CrossMetricSurface s = dualize(t);
    CHECK(s.map().num_vertices() == t.map().num_faces());
    CHECK(s.map().num_faces() == t.map().num_vertices());
    CHECK(s.map().genus() == t.map().genus());
    CHECK(s.n() == t.n());
    Triangulation back = primal_triangulation(s);
    CHECK(back.map() == t.map());
  }
}

TEST_CASE("dual of K7 torus has 14 trivalent vertices") {
  CrossMetricSurface s = dualize(k7_torus());
  CHECK(s.n() == 14);
}

TEST_CASE("classification flags") {
  // build small surfaces with boundary by marking faces of fixtures as holes
  Triangulation tet = tetrahedron();
  const auto& m = tet.map();
  // disk: sphere minus one face
  {
    CombinatorialMap d(m.raw_twin(), m.raw_next(), {m.face_dart(0)});
    SurfaceClass c = classify(d);
    CHECK(c.is_disk);
    CHECK(!c.is_annulus);
  }
  // annulus: sphere minus two faces
  {
    CombinatorialMap d(m.raw_twin(), m.raw_next(), {m.face_dart(0), m.face_dart(1)});
    CHECK(classify(d).is_annulus);
  }
  // pants: sphere minus three
  {
    CombinatorialMap d(m.raw_twin(), m.raw_next(),
                       {m.face_dart(0), m.face_dart(1), m.face_dart(2)});
    CHECK(classify(d).is_pants);
  }
  // torus: none of the flags
  {
    SurfaceClass c = classify(k7_torus().map());
    CHECK(!c.is_disk);
    CHECK(!c.is_annulus);
    CHECK(!c.is_pants);
    CHECK(c.is_torus);
  }
}

TEST_CASE("cmap round trip") {
  for (auto t : {tetrahedron(), k7_torus()}) {
    std::stringstream ss;
    write_cmap(ss, t.map());
    CombinatorialMap back = read_cmap(ss);
    CHECK(back == t.map());
    // bit-exact reproduction
    std::stringstream ss2;
    write_cmap(ss2, back);
    std::stringstream ss3;
    write_cmap(ss3, t.map());
    CHECK(ss2.str() == ss3.str());
  }
}

TEST_CASE("interior vertex bookkeeping with holes") {
  Triangulation t = k7_torus();
  CrossMetricSurface s = dualize(t);
  const auto& m = s.map();
  CombinatorialMap holed(m.raw_twin(), m.raw_next(), {m.face_dart(0)});
  CrossMetricSurface hs{std::move(holed)};
  CHECK(hs.interior_n() < hs.n());
  CHECK(hs.boundaries() == 1);
}
