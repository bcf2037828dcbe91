#include <doctest.h>

#include <random>

#include "coxdef/error.hpp"
#include "coxdef/localdim.hpp"
#include "coxdef/pipeline.hpp"

using namespace coxdef;

namespace {

struct Setup {
  NamedOrbifold X;
  HyperbolicRealization R;
  VinbergSystem S;
  VinbergPoint p;
  JacobianReport rep;
};

Setup setup(const std::string& name) {
  Setup s{lookup(name), {}, {}, {}, {}};
  s.R = realize(s.X.P, s.X.L);
  s.S = build_system(s.X.P, s.X.L, s.R);
  s.p = hyperbolic_point(s.R);
  s.rep = analyze(s.X.P, s.X.L, s.R);
  return s;
}

const int kCubeA[34] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1,
                        1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 2, 1};

}  // namespace

TEST_CASE("quadratic model is exact") {
  std::mt19937 rng(23);
  std::normal_distribution<double> g;
  for (const char* name : {"cu21", "cu33", "do13"}) {
    auto s = setup(name);
    auto M = quadratic_model(s.S, s.p);
    Eigen::VectorXd t = flatten(s.p);
    for (int k = 0; k < 20; ++k) {
      Eigen::VectorXd c(t.size()), d(t.size());
      for (int i = 0; i < c.size(); ++i) c(i) = 0.3 * g(rng), d(i) = g(rng);
      Eigen::VectorXd direct = residuals(s.S, unflatten(t + c));
      CHECK((M.Phi(c) - direct).norm() < 1e-10);
      CHECK((M.L * c + M.Q(c) - direct).norm() < 1e-10);
      // Polarization.
      CHECK((M.B(c, c) - M.Q(c)).norm() < 1e-10);
      CHECK((M.B(c, d) - M.B(d, c)).norm() < 1e-12);
      CHECK((M.Q(c + d) - M.Q(c) - M.Q(d) - 2 * M.B(c, d)).norm() < 1e-9);
    }
  }
}

TEST_CASE("second-order obstruction is scale invariant") {
  auto s = setup("cu26");
  auto M = quadratic_model(s.S, s.p);
  REQUIRE(s.rep.kernel.cols() == 1);
  Eigen::VectorXd v = s.rep.kernel.col(0);
  auto a = second_order_obstruction(M, v);
  auto b = second_order_obstruction(M, -3.5 * v);
  CHECK(a.obstructed);
  CHECK(b.obstructed);
  CHECK(a.relative_residual == doctest::Approx(b.relative_residual).epsilon(1e-8));
}

TEST_CASE("unobstructed kernel direction along a genuine curve") {
  auto s = setup("cu21");
  auto M = quadratic_model(s.S, s.p);
  REQUIRE(s.rep.kernel.cols() == 1);
  auto r = second_order_obstruction(M, s.rep.kernel.col(0));
  CHECK_FALSE(r.obstructed);
  Eigen::VectorXd v = s.rep.kernel.col(0);
  CHECK((M.L * r.w + M.Q(v)).norm() < 1e-8 * (1 + M.Q(v).norm()));
}

TEST_CASE("cone dimensions of the non-full-rank cubes") {
  struct Row {
    const char* name;
    int dim;
  };
  for (Row r : {Row{"cu26", 0}, Row{"cu29", 0}, Row{"cu27", 1}, Row{"cu33", 2}, Row{"cu21", 1}}) {
    CAPTURE(r.name);
    auto s = setup(r.name);
    auto M = quadratic_model(s.S, s.p);
    auto c = cone_dimension(M, s.rep.kernel, s.rep.cokernel);
    CHECK(c.kernel_dim == s.rep.I);
    CHECK(c.dimension == r.dim);
    for (const auto& v : c.directions) {
      CHECK(v.norm() == doctest::Approx(1.0));
      CHECK((s.rep.cokernel.transpose() * M.Q(v)).norm() < 1e-8);
    }
  }
}

TEST_CASE("cone dimension refuses large kernels") {
  auto s = setup("idealcube");
  auto M = quadratic_model(s.S, s.p);
  try {
    cone_dimension(M, s.rep.kernel, s.rep.cokernel);
    FAIL("expected TooManyKernelDims");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooManyKernelDims);
  }
}

TEST_CASE("curve tracking succeeds on a deformable cube and fails on an obstructed one") {
  auto a = setup("cu21");
  auto ta = curve_track(a.S, a.p, a.rep.kernel.col(0));
  CHECK(ta.success);
  for (double r : ta.residuals) CHECK(r < 1e-10);
  auto b = setup("cu26");
  auto tb = curve_track(b.S, b.p, b.rep.kernel.col(0));
  CHECK_FALSE(tb.success);
}

TEST_CASE("prism families solve the system exactly") {
  for (int n = 5; n <= 12; ++n) {
    CAPTURE(n);
    auto F = symmetric_slice_prism(n);
    CHECK(F.max_residual() < 1e-12);
    auto p0 = F.point(F.base_parameter);
    auto h = hyperbolic_point(F.realization);
    REQUIRE(p0.size() == h.size());
    double d = 0;
    for (size_t i = 0; i < h.size(); ++i)
      for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(p0[i][k] - h[i][k]));
    CHECK(d < 1e-12);
    // The family actually moves.
    auto p1 = F.point(F.base_parameter + 0.05);
    double m = 0;
    for (size_t i = 0; i < h.size(); ++i)
      for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(p1[i][k] - h[i][k]));
    CHECK(m > 1e-3);
  }
  CHECK_THROWS_AS(symmetric_slice_prism(4), Error);
}

TEST_CASE("five-fold family of the dodecahedron") {
  auto F = symmetric_slice_do13();
  CHECK(F.max_residual() < 1e-12);
  auto X = lookup("do13");
  auto G = family_for(X.P, X.L);
  REQUIRE(G.has_value());
  CHECK(G->max_residual() < 1e-12);
  // Transported family passes through a hyperbolic point of the catalog
  // labeling; the gauge may differ, the Gram matrix may not.
  auto R = realize(X.P, X.L);
  CHECK(residuals(G->system, G->point(G->base_parameter)).norm() < 1e-12);
  CHECK((G->realization.gram - R.gram).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_FALSE(family_for(lookup("do1").P, lookup("do1").L).has_value());
  CHECK_FALSE(family_for(lookup("cu21").P, lookup("cu21").L).has_value());
}

TEST_CASE("local dimension of every cube matches the table and never exceeds I") {
  const auto& cubes = cube_catalog();
  for (int k = 0; k < 34; ++k) {
    CAPTURE(cubes[k].name);
    auto R = realize(cubes[k].P, cubes[k].L);
    auto rep = analyze(cubes[k].P, cubes[k].L, R);
    auto v = local_dimension(cubes[k].P, cubes[k].L, R, rep);
    CHECK(v.A == kCubeA[k]);
    CHECK(v.A <= rep.I);
    CHECK_FALSE(v.lower_bound);
  }
}

TEST_CASE("certificates of the worked cubes") {
  auto a = setup("cu21");
  auto va = local_dimension(a.X.P, a.X.L, a.R, a.rep);
  CHECK(va.certification == Certification::ExactGroebner);
  auto b = setup("cu26");
  auto vb = local_dimension(b.X.P, b.X.L, b.R, b.rep);
  CHECK(vb.certification == Certification::ObstructionRigid);
  CHECK(vb.status == "rigid, second-order certificate");
  auto c = setup("cu30");
  CHECK(local_dimension(c.X.P, c.X.L, c.R, c.rep).certification == Certification::FullRank);
  auto d = setup("cu33");
  auto vd = local_dimension(d.X.P, d.X.L, d.R, d.rep);
  CHECK(vd.A == 2);
  CHECK(vd.certification == Certification::NumericalEvidence);
}

TEST_CASE("dodecahedra") {
  for (const auto& X : dodecahedron_catalog()) {
    CAPTURE(X.name);
    auto R = realize(X.P, X.L);
    auto rep = analyze(X.P, X.L, R);
    auto v = local_dimension(X.P, X.L, R, rep);
    CHECK(v.A == (X.name == "do13" ? 1 : 0));
    CHECK(v.A <= rep.I);
  }
  auto s = setup("do13");
  auto v = local_dimension(s.X.P, s.X.L, s.R, s.rep);
  CHECK(v.certification == Certification::ExactFamily);
  CHECK_FALSE(v.lower_bound);
}

TEST_CASE("prism family: lower bound from the exact family") {
  auto s = setup("prism6");
  auto v = local_dimension(s.X.P, s.X.L, s.R, s.rep);
  CHECK(v.A >= 1);
  CHECK(v.A <= s.rep.I);
  CHECK(v.certification == Certification::ExactFamily);
}
