#include <doctest.h>

#include <set>
#include <sstream>

#include "coxdef/error.hpp"
#include "coxdef/polytope.hpp"

using namespace coxdef;

namespace {

std::vector<Polyhedron> shapes() {
  std::vector<Polyhedron> out{cube(), dodecahedron(), tetrahedron(), triangular_prism_example()};
  for (int n = 3; n <= 12; ++n) out.push_back(prism(n));
  for (int n = 3; n <= 6; ++n) {
    out.push_back(antiprism(n));
    out.push_back(pyramid(n));
  }
  return out;
}

}  // namespace

TEST_CASE("face, edge and vertex counts of the catalog shapes") {
  auto C = cube();
  CHECK(C.num_faces() == 6);
  CHECK(C.num_edges() == 12);
  CHECK(C.num_vertices() == 8);
  auto D = dodecahedron();
  CHECK(D.num_faces() == 12);
  CHECK(D.num_edges() == 30);
  CHECK(D.num_vertices() == 20);
  for (int n = 3; n <= 12; ++n) {
    auto P = prism(n);
    CHECK(P.num_faces() == n + 2);
    CHECK(P.num_edges() == 3 * n);
    CHECK(P.num_vertices() == 2 * n);
  }
}

TEST_CASE("Euler characteristic and incidence consistency") {
  for (const auto& P : shapes()) {
    CAPTURE(P.name);
    CHECK(P.num_vertices() - P.num_edges() + P.num_faces() == 2);
    for (int e = 0; e < P.num_edges(); ++e) {
      auto [i, j] = P.edges[e];
      CHECK(i < j);
      CHECK(P.edge(i, j) == e);
      CHECK(P.edge(j, i) == e);
    }
    // Consecutive faces around a vertex share an edge.
    for (const auto& vx : P.vertices)
      for (size_t k = 0; k < vx.size(); ++k) CHECK(P.adjacent(vx[k], vx[(k + 1) % vx.size()]));
    // Each edge has exactly two end vertices.
    for (const auto& ends : P.edge_ends) CHECK(ends[0] != ends[1]);
  }
}

TEST_CASE("cube edge numbering follows the figure") {
  // Faces C, L, B, R, T, O = 0..5; e1 = C-T, e2 = C-R, ..., e12 = B-O.
  auto C = cube();
  std::vector<std::array<int, 2>> want = {{0, 4}, {0, 3}, {0, 2}, {0, 1}, {1, 4}, {3, 4},
                                          {2, 3}, {1, 2}, {1, 5}, {4, 5}, {3, 5}, {2, 5}};
  REQUIRE(C.num_edges() == 12);
  for (int e = 0; e < 12; ++e) CHECK(C.edges[e] == want[e]);
}

TEST_CASE("symmetry group orders") {
  CHECK(symmetry_group(cube()).size() == 48);
  CHECK(symmetry_group(dodecahedron()).size() == 120);
  CHECK(symmetry_group(tetrahedron()).size() == 24);
  for (int n : {3, 5, 6, 7, 12}) CHECK(symmetry_group(prism(n)).size() == 4 * n);
  // Every element maps edges to edges.
  auto P = dodecahedron();
  auto G = symmetry_group(P);
  for (int g = 0; g < G.size(); ++g) {
    std::set<int> image(G.edge_maps[g].begin(), G.edge_maps[g].end());
    CHECK(static_cast<int>(image.size()) == P.num_edges());
  }
}

TEST_CASE("counts and the variable-equation excess") {
  auto C = cube();
  // Table row cu21.
  auto c = counts(C, parse_labeling("232232232323"));
  CHECK(c.e2 == 7);
  CHECK(c.O == -1);
  // All orders 3: O = 3f - e = 6.
  CHECK(counts(C, Labeling(12, 3)).O == 6);
}

TEST_CASE("counts are invariant under symmetries") {
  auto P = dodecahedron();
  auto G = symmetry_group(P);
  Labeling L(30, 3);
  for (int e = 0; e < 30; e += 4) L[e] = 2;
  int O = counts(P, L).O;
  for (int g = 0; g < G.size(); ++g) CHECK(counts(P, transport(G.edge_maps[g], L)).O == O);
}

TEST_CASE("labeling strings round trip") {
  Labeling L = parse_labeling("232232232323");
  CHECK(labeling_string(L) == "232232232323");
  CHECK(labeling_string(L, true) == "2 3 2 2 3 2 2 3 2 3 2 3");
  CHECK(parse_labeling("2 3 2 2 3 2 2 3 2 3 2 3") == L);
  CHECK_THROWS_AS(check_labeling(cube(), parse_labeling("2323")), Error);
}

TEST_CASE("face-cycle text format") {
  std::stringstream ss;
  for (const auto& cyc : cube().cycles) {
    for (int f : cyc) ss << f << ' ';
    ss << '\n';
  }
  auto P = read_face_cycles(ss, "copy");
  CHECK(P.num_faces() == 6);
  CHECK(P.num_edges() == 12);
  CHECK(P.num_vertices() == 8);
}

TEST_CASE("inconsistent face cycles are rejected") {
  // Face 0 lists 1 as a neighbour but not the other way round.
  std::vector<std::vector<int>> bad = {{1, 2, 3}, {2, 3}, {0, 1, 3}, {0, 2, 1}};
  CHECK_THROWS_AS(build_polyhedron(bad), Error);
}

TEST_CASE("prismatic circuits") {
  // The three belts of the cube.
  CHECK(prismatic_circuits(cube(), 4).size() == 3);
  CHECK(prismatic_circuits(cube(), 3).empty());
  // The quadrilaterals of a triangular prism.
  CHECK(prismatic_circuits(triangular_prism_example(), 3).size() == 1);
  // Around a vertex three faces form a 3-cycle that is not prismatic.
  CHECK(prismatic_circuits(dodecahedron(), 3).empty());
  CHECK(prismatic_circuits(dodecahedron(), 4).empty());
}

TEST_CASE("vertex classification") {
  auto C = cube();
  for (auto k : classify_vertices(C, Labeling(12, 3))) CHECK(k == VertexKind::Ideal);
  for (auto k : classify_vertices(C, parse_labeling("232232232323"))) CHECK(k == VertexKind::Finite);
  // Three edges of order 2 at every vertex: finite.
  for (auto k : classify_vertices(C, Labeling(12, 2))) CHECK(k == VertexKind::Finite);
}

TEST_CASE("builtin names") {
  CHECK(builtin("prism7").num_faces() == 9);
  CHECK(builtin("triprism").num_faces() == 5);
  CHECK_THROWS_AS(builtin("icosahedron"), Error);
}
