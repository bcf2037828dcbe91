#include "coxdef/vinberg.hpp"

#include <cmath>

#include "coxdef/error.hpp"

namespace coxdef {

const char* equation_kind_name(EquationKind k) {
  switch (k) {
    case EquationKind::Normalize: return "normalize";
    case EquationKind::Product: return "product";
    case EquationKind::Zero1: return "zero1";
    case EquationKind::Zero2: return "zero2";
  }
  return "?";
}

std::vector<Equation> vinberg_equations(const Polyhedron& P, const Labeling& L) {
  check_labeling(P, L);
  std::vector<Equation> eqs;
  for (int i = 0; i < P.num_faces(); ++i) eqs.push_back({EquationKind::Normalize, i, i, 0});
  for (int e = 0; e < P.num_edges(); ++e) {
    auto [i, j] = P.edges[e];
    if (L[e] == 2) {
      eqs.push_back({EquationKind::Zero2, i, j, 2});
      eqs.push_back({EquationKind::Zero1, i, j, 2});
    } else {
      eqs.push_back({EquationKind::Product, i, j, L[e]});
    }
  }
  return eqs;
}

VinbergSystem build_system(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R) {
  VinbergSystem S;
  S.faces = P.num_faces();
  for (const auto& v : R.normals) S.alphas.push_back({-v[0], v[1], v[2], v[3]});
  S.equations = vinberg_equations(P, L);
  return S;
}

VinbergPoint hyperbolic_point(const HyperbolicRealization& R) {
  VinbergPoint p;
  for (const auto& v : R.normals) p.push_back({2 * v[0], 2 * v[1], 2 * v[2], 2 * v[3]});
  return p;
}

double evaluate(const Vec4& a, const Vec4& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

Eigen::Matrix4d reflection_matrix(const Vec4& alpha, const Vec4& b, double tol) {
  if (std::abs(evaluate(alpha, b) - 2) > tol) throw Error(ErrorKind::NotNormalized, "alpha(b) != 2");
  Eigen::Matrix4d R = Eigen::Matrix4d::Identity();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) R(r, c) -= b[r] * alpha[c];
  return R;
}

Eigen::VectorXd residuals(const VinbergSystem& S, const VinbergPoint& p) {
  Eigen::VectorXd r(S.num_equations());
  for (int k = 0; k < S.num_equations(); ++k) {
    const auto& q = S.equations[k];
    switch (q.kind) {
      case EquationKind::Normalize: r(k) = evaluate(S.alphas[q.i], p[q.i]) - 2; break;
      case EquationKind::Product: {
        double c = std::cos(M_PI / q.order);
        r(k) = evaluate(S.alphas[q.i], p[q.j]) * evaluate(S.alphas[q.j], p[q.i]) - 4 * c * c;
        break;
      }
      case EquationKind::Zero1: r(k) = evaluate(S.alphas[q.i], p[q.j]); break;
      case EquationKind::Zero2: r(k) = evaluate(S.alphas[q.j], p[q.i]); break;
    }
  }
  return r;
}

Eigen::MatrixXd cartan_matrix(const VinbergSystem& S, const VinbergPoint& p) {
  Eigen::MatrixXd A(S.faces, S.faces);
  for (int i = 0; i < S.faces; ++i)
    for (int j = 0; j < S.faces; ++j) A(i, j) = evaluate(S.alphas[i], p[j]);
  return A;
}

CartanReport cartan_checks(const Eigen::MatrixXd& A, const Polyhedron& P, const Labeling& L, double tol) {
  CartanReport rep;
  const int f = static_cast<int>(A.rows());
  auto zero = [&](double x) { return std::abs(x) <= tol; };
  rep.c1 = true;
  rep.c2 = true;
  for (int i = 0; i < f; ++i) {
    if (!zero(A(i, i) - 2)) {
      rep.c2 = false;
      rep.failures.push_back("a_" + std::to_string(i + 1) + std::to_string(i + 1) + " != 2");
    }
    for (int j = 0; j < f; ++j) {
      if (i == j) continue;
      if (A(i, j) > tol) {
        rep.c1 = false;
        rep.failures.push_back("positive entry at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
      if (zero(A(i, j)) != zero(A(j, i))) {
        rep.c1 = false;
        rep.failures.push_back("zero pattern not symmetric at (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ")");
      }
      if (j < i) continue;
      double prod = A(i, j) * A(j, i);
      if (P.adjacent(i, j)) {
        int n = L[P.edge(i, j)];
        double c = std::cos(M_PI / n);
        bool ok = n == 2 ? zero(A(i, j)) && zero(A(j, i)) : zero(prod - 4 * c * c);
        if (!ok) {
          rep.c2 = false;
          rep.failures.push_back("edge product wrong at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
      } else if (!zero(prod) && prod < 4 - tol) {
        rep.c2 = false;
        rep.failures.push_back("product < 4 at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
  // Diagonal equivalence: d_j = d_i a_ij / a_ji along a spanning forest, then
  // D A must be symmetric.
  Eigen::VectorXd d = Eigen::VectorXd::Zero(f);
  bool positive_ratios = true;
  for (int root = 0; root < f; ++root) {
    if (d(root) != 0) continue;
    d(root) = 1;
    std::vector<int> st{root};
    while (!st.empty()) {
      int i = st.back();
      st.pop_back();
      for (int j = 0; j < f; ++j)
        if (j != i && d(j) == 0 && !zero(A(i, j)) && !zero(A(j, i))) {
          double ratio = A(i, j) / A(j, i);
          if (ratio <= 0) positive_ratios = false;
          d(j) = d(i) * std::abs(ratio);
          st.push_back(j);
        }
    }
  }
  Eigen::MatrixXd S = d.asDiagonal() * A;
  double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  rep.symmetrizable = positive_ratios && (S - S.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
  if (!rep.symmetrizable) rep.failures.push_back("not symmetrizable by a positive diagonal");
  // Signature of the symmetric part: congruent to the symmetrized matrix when
  // symmetrizable.
  Eigen::MatrixXd Ssym = (S + S.transpose()) / 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ssym);
  double escale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (int k = 0; k < f; ++k) {
    double ev = es.eigenvalues()(k);
    if (ev > 1e-9 * escale)
      ++rep.positive;
    else if (ev < -1e-9 * escale)
      ++rep.negative;
    else
      ++rep.zero;
  }
  rep.hyperbolic = rep.symmetrizable && rep.negative == 1 && rep.positive == 3;
  if (rep.symmetrizable && !rep.hyperbolic) rep.failures.push_back("signature is not (3,1)");
  return rep;
}

}  // namespace coxdef
