#include <doctest.h>

#include <map>
#include <random>

#include "coxdef/error.hpp"
#include "coxdef/pipeline.hpp"
#include "coxdef/rigidity.hpp"

using namespace coxdef;

TEST_CASE("seventeen cubes pass the linear test, at the printed levels") {
  const std::map<std::string, int> levels = {
      {"cu1", 2},  {"cu2", 3},  {"cu3", 1},  {"cu4", 2},  {"cu5", 3},  {"cu6", 2},
      {"cu7", 3},  {"cu8", 2},  {"cu9", 2},  {"cu10", 3}, {"cu11", 2}, {"cu12", 3},
      {"cu13", 2}, {"cu14", 3}, {"cu16", 3}, {"cu20", 3}, {"cu23", 3}};
  for (const auto& X : cube_catalog()) {
    CAPTURE(X.name);
    auto r = linear_test(X.P, X.L);
    auto it = levels.find(X.name);
    CHECK(r.rigid == (it != levels.end()));
    if (it != levels.end()) {
      CHECK(r.max_level == it->second);
      CHECK(r.stalled_faces.empty());
      for (int lv : r.level) CHECK(lv >= 1);
    } else {
      CHECK_FALSE(r.stalled_faces.empty());
    }
  }
}

TEST_CASE("no dodecahedron face has three right angles, so none is linearly rigid") {
  for (const auto& X : dodecahedron_catalog()) {
    auto r = linear_test(X.P, X.L);
    CHECK_FALSE(r.rigid);
    CHECK(r.max_level == 0);
  }
}

TEST_CASE("level-one faces have three order-2 edges") {
  auto X = lookup("cu3");
  auto r = linear_test(X.P, X.L);
  for (int f = 0; f < X.P.num_faces(); ++f) {
    int twos = 0;
    for (int e : X.P.face_edges[f]) twos += X.L[e] == 2;
    CHECK((r.level[f] == 1) == (twos >= 3));
  }
}

TEST_CASE("orderability") {
  // Cubes and dodecahedra never: the lowest face would need to be a triangle.
  for (const auto& X : cube_catalog()) CHECK_FALSE(orderability_test(X.P, X.L).orderable);
  for (const auto& X : dodecahedron_catalog()) CHECK_FALSE(orderability_test(X.P, X.L).orderable);
  auto T = lookup("triprism");
  auto o = orderability_test(T.P, T.L);
  CHECK(o.orderable);
  CHECK(is_valid_ordering(T.P, T.L, o.order));
  CHECK(is_valid_ordering(T.P, T.L, {0, 1, 2, 3, 4}));
  for (int n = 5; n <= 12; ++n) CHECK_FALSE(orderability_test(prism(n), prism_family_labeling(n)).orderable);
}

TEST_CASE("greedy peeling agrees with exhaustive search on small shapes") {
  std::mt19937 rng(3);
  for (auto P : {triangular_prism_example(), prism(4), pyramid(4), tetrahedron()}) {
    std::uniform_int_distribution<int> pick(2, 5);
    for (int t = 0; t < 50; ++t) {
      Labeling L(P.num_edges());
      for (auto& x : L) x = pick(rng);
      std::vector<int> perm(P.num_faces());
      for (int i = 0; i < P.num_faces(); ++i) perm[i] = i;
      bool any = false;
      do any = any || is_valid_ordering(P, L, perm);
      while (!any && std::next_permutation(perm.begin(), perm.end()));
      CHECK(orderability_test(P, L).orderable == any);
    }
  }
}

TEST_CASE("triangular prism example: dimension three") {
  auto T = lookup("triprism");
  CHECK(choi_dimension(T.P, T.L) == 3);
  CHECK_FALSE(is_cone_type(T.P, T.L));
  CHECK_FALSE(is_product_type(T.P, T.L));
  CHECK_FALSE(has_finite_group(T.P, T.L));
  // Only five faces: the shortcut does not apply.
  CHECK_FALSE(orderable_rigidity_shortcut(T.P, T.L).has_value());
}

TEST_CASE("choi dimension requires orderability") {
  auto X = lookup("cu21");
  CHECK_THROWS_AS(choi_dimension(X.P, X.L), Error);
  CHECK_THROWS_AS(orderable_rigidity_shortcut(X.P, X.L), Error);
}

TEST_CASE("verdicts are invariant under symmetries") {
  std::mt19937 rng(17);
  for (auto P : {cube(), dodecahedron(), prism(7)}) {
    auto G = symmetry_group(P);
    std::uniform_int_distribution<int> pick(2, 3), elem(0, G.size() - 1);
    for (int t = 0; t < 100; ++t) {
      Labeling L(P.num_edges());
      for (auto& x : L) x = pick(rng);
      auto a = linear_test(P, L);
      auto o = orderability_test(P, L).orderable;
      int g = elem(rng);
      auto M = transport(G.edge_maps[g], L);
      auto b = linear_test(P, M);
      CHECK(a.rigid == b.rigid);
      CHECK(a.max_level == b.max_level);
      CHECK(orderability_test(P, M).orderable == o);
      // Levels move with the faces.
      for (int f = 0; f < P.num_faces(); ++f) CHECK(b.level[G.elements[g][f]] == a.level[f]);
    }
  }
}
