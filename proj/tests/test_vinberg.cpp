#include <doctest.h>

#include <cmath>

#include "coxdef/error.hpp"
#include "coxdef/pipeline.hpp"
#include "coxdef/vinberg.hpp"

using namespace coxdef;

namespace {

std::vector<NamedOrbifold> everything() {
  std::vector<NamedOrbifold> out = cube_catalog();
  for (const auto& X : dodecahedron_catalog()) out.push_back(X);
  out.push_back(lookup("triprism"));
  out.push_back(lookup("prism6"));
  return out;
}

}  // namespace

TEST_CASE("system sizes: N = f + e + e2 equations in 4f variables") {
  auto T = lookup("triprism");
  auto S = build_system(T.P, T.L, realize(T.P, T.L));
  CHECK(S.num_equations() == 17);
  CHECK(S.num_variables() == 20);
  auto C21 = lookup("cu21");
  CHECK(vinberg_equations(C21.P, C21.L).size() == 25);
  auto C27 = lookup("cu27");
  CHECK(vinberg_equations(C27.P, C27.L).size() == 23);
}

TEST_CASE("equation order: normalizations, then edges in numbering order") {
  auto T = lookup("triprism");
  auto eqs = vinberg_equations(T.P, T.L);
  for (int i = 0; i < 5; ++i) {
    CHECK(eqs[i].kind == EquationKind::Normalize);
    CHECK(eqs[i].i == i);
  }
  // Edge F1F5 has order 2: the row with alpha_5 at block 1 precedes the row
  // with alpha_1 at block 5.
  CHECK(eqs[7].kind == EquationKind::Zero2);
  CHECK(eqs[8].kind == EquationKind::Zero1);
  CHECK(eqs[7].i == 0);
  CHECK(eqs[7].j == 4);
  CHECK(eqs[5].kind == EquationKind::Product);
}

TEST_CASE("the hyperbolic point solves every catalog system") {
  for (const auto& X : everything()) {
    CAPTURE(X.name);
    auto R = realize(X.P, X.L);
    auto S = build_system(X.P, X.L, R);
    auto p = hyperbolic_point(R);
    CHECK(residuals(S, p).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("reflections are involutions") {
  for (const auto& X : everything()) {
    CAPTURE(X.name);
    auto R = realize(X.P, X.L);
    auto S = build_system(X.P, X.L, R);
    auto p = hyperbolic_point(R);
    for (int i = 0; i < S.faces; ++i) {
      auto M = reflection_matrix(S.alphas[i], p[i]);
      CHECK(((M * M - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff()) < 1e-10);
      // The fixed hyperplane is ker alpha_i and b_i is sent to -b_i.
      Eigen::Vector4d b(p[i][0], p[i][1], p[i][2], p[i][3]);
      CHECK((M * b + b).norm() < 1e-10);
    }
  }
}

TEST_CASE("reflection_matrix requires alpha(b) = 2") {
  CHECK_THROWS_AS(reflection_matrix({1, 0, 0, 0}, {1, 0, 0, 0}), Error);
}

TEST_CASE("Cartan matrix at the hyperbolic point") {
  for (const auto& X : everything()) {
    CAPTURE(X.name);
    auto R = realize(X.P, X.L);
    auto S = build_system(X.P, X.L, R);
    auto A = cartan_matrix(S, hyperbolic_point(R));
    // a_ij = 2 <nu_i, nu_j> with b = 2 nu.
    for (int i = 0; i < S.faces; ++i)
      for (int j = 0; j < S.faces; ++j) CHECK(std::abs(A(i, j) - 2 * R.gram(i, j)) < 1e-10);
    auto rep = cartan_checks(A, X.P, X.L);
    CHECK(rep.c1);
    CHECK(rep.c2);
    CHECK(rep.symmetrizable);
    CHECK(rep.hyperbolic);
  }
}

TEST_CASE("Cartan checks reject a broken matrix") {
  auto X = lookup("cu21");
  auto R = realize(X.P, X.L);
  auto A = cartan_matrix(build_system(X.P, X.L, R), hyperbolic_point(R));
  auto [i, j] = X.P.edges[0];
  A(i, j) = 0.3;  // positive off-diagonal entry
  CHECK_FALSE(cartan_checks(A, X.P, X.L).c1);
}

TEST_CASE("covector evaluation is the Euclidean pairing") {
  CHECK(evaluate({-1, 2, 3, 4}, {1, 1, 1, 1}) == 8);
}
