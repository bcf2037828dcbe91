#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "coxdef/error.hpp"
#include "coxdef/pipeline.hpp"
#include "coxdef/tangent.hpp"

using namespace coxdef;

namespace {

const int kCubeI[34] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1,
                        1, 0, 0, 1, 1, 0, 0, 0, 1, 2, 0, 1, 1, 1, 1, 3, 1};
const int kCubeO[34] = {-3, -2, -3, -2, -1, -2, -1, -3, -2, -2, -2, -1, -1, -1, 0, -1, -1,
                        0,  0,  -1, -1, 0,  -1, 0,  0,  0,  1,  -1, 0,  1,  1, 1,  2,  0};
const int kDodecahedronI[13] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
const int kDodecahedronO[13] = {-6, -5, -5, -5, -6, -5, -5, -6, -5, -5, -4, -6, -4};

Eigen::VectorXd flat(const VinbergPoint& p) {
  Eigen::VectorXd x(4 * p.size());
  for (size_t i = 0; i < p.size(); ++i)
    for (int k = 0; k < 4; ++k) x(4 * i + k) = p[i][k];
  return x;
}

VinbergPoint unflat(const Eigen::VectorXd& x) {
  VinbergPoint p(x.size() / 4);
  for (size_t i = 0; i < p.size(); ++i)
    for (int k = 0; k < 4; ++k) p[i][k] = x(4 * i + k);
  return p;
}

}  // namespace

TEST_CASE("Jacobian sizes and ranks of the worked examples") {
  struct Row {
    const char* name;
    int rows, cols, rank;
  };
  for (Row r : {Row{"cu21", 25, 24, 23}, Row{"cu27", 23, 24, 22}, Row{"triprism", 17, 20, 17}}) {
    CAPTURE(r.name);
    auto X = lookup(r.name);
    auto rep = analyze(X.P, X.L, realize(X.P, X.L));
    CHECK(rep.rows == r.rows);
    CHECK(rep.cols == r.cols);
    CHECK(rep.rank == r.rank);
    CHECK(rep.gap >= 1e3);
  }
}

TEST_CASE("I and O columns of both tables") {
  const auto& cubes = cube_catalog();
  for (int k = 0; k < 34; ++k) {
    CAPTURE(cubes[k].name);
    auto rep = analyze(cubes[k].P, cubes[k].L, realize(cubes[k].P, cubes[k].L));
    CHECK(rep.I == kCubeI[k]);
    CHECK(rep.O == kCubeO[k]);
    CHECK(rep.gap >= 1e3);
    CHECK(rep.kernel.cols() == rep.I);
  }
  const auto& dods = dodecahedron_catalog();
  for (int k = 0; k < 13; ++k) {
    CAPTURE(dods[k].name);
    auto rep = analyze(dods[k].P, dods[k].L, realize(dods[k].P, dods[k].L));
    CHECK(rep.I == kDodecahedronI[k]);
    CHECK(rep.O == kDodecahedronO[k]);
    CHECK(rep.gap >= 1e3);
  }
}

TEST_CASE("Jacobian agrees with central differences of the quadratic system") {
  // Phi is quadratic, so the central difference is exact up to rounding.
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  std::vector<NamedOrbifold> sample{lookup("cu21"), lookup("cu27"), lookup("cu33"), lookup("do13"),
                                    lookup("triprism")};
  for (const auto& X : sample) {
    CAPTURE(X.name);
    auto R = realize(X.P, X.L);
    auto S = build_system(X.P, X.L, R);
    auto p = hyperbolic_point(R);
    auto J = jacobian(S, p);
    Eigen::VectorXd x0 = flat(p);
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd v(x0.size());
      for (int k = 0; k < v.size(); ++k) v(k) = g(rng);
      const double h = 1e-3;
      Eigen::VectorXd fd = (residuals(S, unflat(x0 + h * v)) - residuals(S, unflat(x0 - h * v))) / (2 * h);
      CHECK((fd - J * v).norm() < 1e-9 * (1 + (J * v).norm()));
    }
  }
}

TEST_CASE("rank is invariant under row permutations") {
  std::mt19937 rng(5);
  for (const char* name : {"cu21", "cu26", "cu33", "do13"}) {
    auto X = lookup(name);
    auto R = realize(X.P, X.L);
    auto J = jacobian(build_system(X.P, X.L, R), hyperbolic_point(R));
    int r0 = numerical_rank(J).rank;
    std::vector<int> perm(J.rows());
    std::iota(perm.begin(), perm.end(), 0);
    for (int t = 0; t < 10; ++t) {
      std::shuffle(perm.begin(), perm.end(), rng);
      Eigen::MatrixXd Q(J.rows(), J.cols());
      for (int r = 0; r < J.rows(); ++r) Q.row(r) = J.row(perm[r]);
      CHECK(numerical_rank(Q).rank == r0);
    }
  }
}

TEST_CASE("kernel and cokernel bases") {
  auto X = lookup("cu27");
  auto R = realize(X.P, X.L);
  auto rep = analyze(X.P, X.L, R);
  auto J = jacobian(build_system(X.P, X.L, R), hyperbolic_point(R));
  CHECK((J * rep.kernel).norm() < 1e-10);
  CHECK((rep.cokernel.transpose() * J).norm() < 1e-10);
  CHECK((rep.kernel.transpose() * rep.kernel - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
  // Canonical basis does not depend on the spanning set.
  Eigen::Matrix2d rot;
  rot << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
  Eigen::MatrixXd K2 = canonical_kernel_basis(rep.kernel * rot);
  CHECK((K2 - rep.kernel).norm() < 1e-10);
}

TEST_CASE("hyperbolic Jacobian rows") {
  auto X = lookup("cu21");
  auto R = realize(X.P, X.L);
  auto Dh = hyperbolic_jacobian(X.P, R);
  auto D = jacobian(build_system(X.P, X.L, R), hyperbolic_point(R));
  CHECK(Dh.rows() == 6 + 12);
  // Derivative of <b_i, b_i> - 4 is 4 alpha_i: four times the normalization row.
  for (int i = 0; i < 6; ++i) CHECK((Dh.row(i) - 4 * D.row(i)).norm() < 1e-12);
}

TEST_CASE("ideal cube: rank D = rank D-hat = 18 and the kernel is the isometry orbit") {
  auto X = lookup("idealcube");
  auto R = realize(X.P, X.L);
  auto rep = analyze(X.P, X.L, R);
  CHECK(rep.rows == 18);
  CHECK(rep.rank == 18);
  CHECK(rep.I == 6);
  auto chk = isometry_kernel_check(X.P, X.L, R, rep);
  CHECK(chk.rank_D == 18);
  CHECK(chk.rank_Dhat == 18);
  CHECK(chk.kernel_dim == 6);
  CHECK(chk.subspace_distance < 1e-9);
  // Each row of D is a multiple of a row of D-hat.
  auto D = jacobian(build_system(X.P, X.L, R), hyperbolic_point(R));
  auto Dh = hyperbolic_jacobian(X.P, R);
  for (int r = 0; r < D.rows(); ++r) {
    bool multiple = false;
    for (int q = 0; q < Dh.rows() && !multiple; ++q) {
      double c = D.row(r).dot(Dh.row(q)) / Dh.row(q).squaredNorm();
      multiple = std::abs(c) > 1e-9 && (D.row(r) - c * Dh.row(q)).norm() < 1e-10;
    }
    CHECK(multiple);
  }
}

TEST_CASE("isometry check refuses order-2 edges") {
  auto X = lookup("cu15");
  auto R = realize(X.P, X.L);
  CHECK_THROWS_AS(isometry_kernel_check(X.P, X.L, R, analyze(X.P, X.L, R)), Error);
}

TEST_CASE("full-rank criterion") {
  auto X = lookup("cu30");
  auto rep = analyze(X.P, X.L, realize(X.P, X.L));
  CHECK(rep.J);
  CHECK(rep.local_dim.value_or(-1) == 1);
  auto Y = lookup("cu21");
  CHECK_FALSE(analyze(Y.P, Y.L, realize(Y.P, Y.L)).J);
}

TEST_CASE("numerical rank of a synthetic matrix") {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4, 3);
  M(0, 0) = 1;
  M(1, 1) = 2;
  auto r = numerical_rank(M);
  CHECK(r.rank == 2);
  CHECK_FALSE(r.ambiguous);
  M(2, 2) = 1e-9;  // gap only 1e9 / 1: still decided, small but clearly nonzero
  CHECK(numerical_rank(M).rank == 3);
}
