#include "precision.hpp"

#include <cmath>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "coxdef/error.hpp"
#include "coxdef/linalg.hpp"
#include "coxdef/vinberg.hpp"
#include "formulas.hpp"
#include "jacobian_t.hpp"

namespace coxdef::detail {

namespace {

using Mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                         boost::multiprecision::et_off>;
using V = std::array<Mp, 4>;

struct PrecisionScope {
  unsigned old;
  explicit PrecisionScope(int bits) : old(Mp::default_precision()) {
    Mp::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
  }
  ~PrecisionScope() { Mp::default_precision(old); }
};

Mp eps_of(int bits) { return boost::multiprecision::ldexp(Mp(1), 1 - bits); }

V promote(const Vec4& v) { return {Mp(v[0]), Mp(v[1]), Mp(v[2]), Mp(v[3])}; }

bool close_to(const std::vector<V>& X, const std::vector<Vec4>& Y) {
  if (X.size() != Y.size()) return false;
  for (size_t i = 0; i < X.size(); ++i)
    for (int c = 0; c < 4; ++c)
      if (std::abs(static_cast<double>(X[i][c]) - Y[i][c]) > 1e-8) return false;
  return true;
}

// Closed form when R is one of the symmetric constructions.
std::optional<std::vector<V>> closed_form(const Labeling& L, const HyperbolicRealization& R) {
  if (R.polyhedron == "dodecahedron" && L == do13_labeling()) {
    auto X = formulas::do13_catalog_normals<Mp>();
    if (close_to(X, R.normals)) return X;
  }
  if (R.polyhedron.rfind("prism", 0) == 0) {
    int n = static_cast<int>(R.normals.size()) - 2;
    if (n >= 5 && L == prism_family_labeling(n)) {
      auto X = formulas::prism_normals<Mp>(n);
      if (close_to(X, R.normals)) return X;
    }
  }
  return std::nullopt;
}

// Exact frame targets for the faces pinned by the gauge.
std::vector<std::pair<int, V>> pins(const HyperbolicRealization& R) {
  std::vector<std::pair<int, V>> out;
  const auto& g = R.gauge;
  if (g.kind == AnchorKind::None || g.sources.size() != 3) return out;
  std::array<V, 3> t;
  if (g.kind == AnchorKind::Standard223 || g.kind == AnchorKind::Standard222) {
    t = formulas::standard_targets<Mp>(g.kind == AnchorKind::Standard223);
  } else if (g.kind == AnchorKind::Do13Frame) {
    t = formulas::do13_frame_targets<Mp>();
  } else {
    for (int k = 0; k < 3; ++k) t[k] = promote(g.targets[k]);
  }
  for (int k = 0; k < 3; ++k)
    if (g.sources[k].size() == 1) out.push_back({g.sources[k][0].first, t[k]});
  return out;
}

Mp lor(const V& x, const V& y) { return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3]; }

std::vector<V> refine(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R, int bits,
                      Mp& residual) {
  if (auto X = closed_form(L, R)) {
    residual = 0;
    return *X;
  }
  const int f = P.num_faces(), e = P.num_edges();
  std::vector<V> X;
  for (const auto& v : R.normals) X.push_back(promote(v));
  std::vector<char> pinned(f, 0);
  for (auto& [face, t] : pins(R)) {
    X[face] = t;
    pinned[face] = 1;
  }
  std::vector<Mp> tg(e);
  const Mp pi = boost::math::constants::pi<Mp>();
  for (int k = 0; k < e; ++k) tg[k] = -cos(pi / L[k]);
  std::vector<int> col(f, -1);
  int nfree = 0;
  for (int i = 0; i < f; ++i)
    if (!pinned[i]) col[i] = nfree++;
  std::vector<int> rows;
  for (int i = 0; i < f; ++i)
    if (!pinned[i]) rows.push_back(i);
  for (int k = 0; k < e; ++k)
    if (!pinned[P.edges[k][0]] || !pinned[P.edges[k][1]]) rows.push_back(f + k);
  auto resid = [&]() {
    VectorT<Mp> r(rows.size());
    for (size_t k = 0; k < rows.size(); ++k) {
      int q = rows[k];
      r(k) = q < f ? lor(X[q], X[q]) - 1 : lor(X[P.edges[q - f][0]], X[P.edges[q - f][1]]) - tg[q - f];
    }
    return r;
  };
  const Mp eps = eps_of(bits);
  Mp res = 0;
  for (int it = 0; it < 40; ++it) {
    VectorT<Mp> r = resid();
    res = r.size() ? r.cwiseAbs().maxCoeff() : Mp(0);
    if (res < 16 * eps) break;
    MatrixT<Mp> M = MatrixT<Mp>::Zero(rows.size(), 4 * nfree);
    for (size_t k = 0; k < rows.size(); ++k) {
      int q = rows[k];
      auto jv = [](const V& v) { return V{-v[0], v[1], v[2], v[3]}; };
      if (q < f) {
        V a = jv(X[q]);
        for (int c = 0; c < 4; ++c) M(k, 4 * col[q] + c) = 2 * a[c];
      } else {
        auto [i, j] = P.edges[q - f];
        V ai = jv(X[i]), aj = jv(X[j]);
        for (int c = 0; c < 4; ++c) {
          if (col[i] >= 0) M(k, 4 * col[i] + c) = aj[c];
          if (col[j] >= 0) M(k, 4 * col[j] + c) = ai[c];
        }
      }
    }
    auto svd = jacobi_svd<Mp>(M, eps);
    Mp tau = Mp(static_cast<double>(std::max(M.rows(), M.cols()))) * eps * svd.s(0) * 1024;
    VectorT<Mp> dx = svd_solve<Mp>(svd, r, tau);
    for (int i = 0; i < f; ++i)
      if (col[i] >= 0)
        for (int c = 0; c < 4; ++c) X[i][c] -= dx(4 * col[i] + c);
  }
  residual = res;
  return X;
}

Eigen::MatrixXd to_double(const MatrixT<Mp>& M) {
  Eigen::MatrixXd out(M.rows(), M.cols());
  for (Eigen::Index r = 0; r < M.rows(); ++r)
    for (Eigen::Index c = 0; c < M.cols(); ++c) out(r, c) = static_cast<double>(M(r, c));
  return out;
}

}  // namespace

MpRank mp_rank(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R, int bits) {
  PrecisionScope scope(bits);
  Mp residual;
  auto X = refine(P, L, R, bits, residual);
  std::vector<V> alphas, b;
  for (const auto& v : X) {
    alphas.push_back({-v[0], v[1], v[2], v[3]});
    b.push_back({2 * v[0], 2 * v[1], 2 * v[2], 2 * v[3]});
  }
  auto eqs = vinberg_equations(P, L);
  MatrixT<Mp> D = jacobian_t<Mp>(eqs, P.num_faces(), alphas, b);
  const Mp eps = eps_of(bits);
  auto svd = jacobi_svd<Mp>(D, eps);
  auto dec = decide_rank<Mp>(svd.s, D.rows(), D.cols(), eps);
  MatrixT<Mp> Dt = D.transpose();
  auto left = jacobi_svd<Mp>(Dt, eps);
  MpRank out;
  out.bits = bits;
  out.rank = dec.rank;
  out.tau = static_cast<double>(dec.tau);
  out.min_singular = static_cast<double>(dec.min_singular);
  out.gap = static_cast<double>(dec.gap);
  out.residual = static_cast<double>(residual);
  out.singular_values.resize(svd.s.size());
  for (Eigen::Index k = 0; k < svd.s.size(); ++k) out.singular_values(k) = static_cast<double>(svd.s(k));
  out.V = to_double(svd.V);
  out.U_left = to_double(left.V);
  return out;
}

std::vector<std::array<std::string, 4>> mp_normal_strings(const Polyhedron& P, const Labeling& L,
                                                          const HyperbolicRealization& R, int bits) {
  PrecisionScope scope(bits);
  Mp residual;
  auto X = refine(P, L, R, bits, residual);
  std::vector<std::array<std::string, 4>> out;
  int digits = static_cast<int>(std::ceil(bits * 0.30103));
  for (const auto& v : X) {
    std::array<std::string, 4> s;
    for (int c = 0; c < 4; ++c) s[c] = v[c].str(digits, std::ios_base::scientific);
    out.push_back(s);
  }
  return out;
}

}  // namespace coxdef::detail
