#include "coxdef/tangent.hpp"

#include <cmath>
#include <limits>

#include "coxdef/error.hpp"
#include "coxdef/linalg.hpp"
#include "jacobian_t.hpp"
#include "precision.hpp"

namespace coxdef {

Eigen::MatrixXd jacobian(const VinbergSystem& S, const VinbergPoint& p) {
  return detail::jacobian_t<double>(S.equations, S.faces, S.alphas, p);
}

Eigen::MatrixXd hyperbolic_jacobian(const Polyhedron& P, const HyperbolicRealization& R) {
  const int f = P.num_faces(), e = P.num_edges();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(f + e, 4 * f);
  auto alpha = [&](int i) { return Eigen::RowVector4d(-R.normals[i][0], R.normals[i][1], R.normals[i][2], R.normals[i][3]); };
  for (int i = 0; i < f; ++i) M.block<1, 4>(i, 4 * i) = 4 * alpha(i);
  for (int k = 0; k < e; ++k) {
    auto [i, j] = P.edges[k];
    M.block<1, 4>(f + k, 4 * i) = 2 * alpha(j);
    M.block<1, 4>(f + k, 4 * j) = 2 * alpha(i);
  }
  return M;
}

RankInfo numerical_rank(const Eigen::MatrixXd& M, double gap_factor) {
  auto svd = jacobi_svd(M);
  auto d = decide_rank<double>(svd.s, M.rows(), M.cols(), std::numeric_limits<double>::epsilon());
  RankInfo r;
  r.rank = d.rank;
  r.tau = d.tau;
  r.min_singular = d.min_singular;
  r.gap = d.gap;
  r.ambiguous = d.gap < gap_factor;
  r.singular_values = svd.s;
  return r;
}

Eigen::MatrixXd canonical_kernel_basis(const Eigen::MatrixXd& K) {
  const Eigen::Index n = K.rows(), k = K.cols();
  if (k == 0) return K;
  Eigen::MatrixXd M = K.transpose();
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < n && row < k; ++c) {
    Eigen::Index best = row;
    for (Eigen::Index r = row + 1; r < k; ++r)
      if (std::abs(M(r, c)) > std::abs(M(best, c))) best = r;
    if (std::abs(M(best, c)) < 1e-8) continue;
    M.row(row).swap(M.row(best));
    M.row(row) /= M(row, c);
    for (Eigen::Index r = 0; r < k; ++r)
      if (r != row) M.row(r) -= M(r, c) * M.row(row);
    ++row;
  }
  // Gram-Schmidt in echelon order.
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index q = 0; q < r; ++q) M.row(r) -= M.row(r).dot(M.row(q)) * M.row(q);
    M.row(r).normalize();
    for (Eigen::Index c = 0; c < n; ++c)
      if (std::abs(M(r, c)) > 1e-12) {
        if (M(r, c) < 0) M.row(r) *= -1;
        break;
      }
  }
  return M.transpose();
}

JacobianReport analyze(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R,
                       const TangentOptions& opt) {
  auto S = build_system(P, L, R);
  auto p = hyperbolic_point(R);
  Eigen::MatrixXd D = jacobian(S, p);
  auto c = counts(P, L);
  JacobianReport rep;
  rep.rows = static_cast<int>(D.rows());
  rep.cols = static_cast<int>(D.cols());
  rep.O = c.O;
  rep.anchor = R.gauge.kind;

  auto svd = jacobi_svd(D);
  auto dec = decide_rank<double>(svd.s, D.rows(), D.cols(), std::numeric_limits<double>::epsilon());
  Eigen::MatrixXd V = svd.V;
  Eigen::MatrixXd Ul = jacobi_svd(Eigen::MatrixXd(D.transpose())).V;
  rep.rank = dec.rank;
  rep.tau = dec.tau;
  rep.min_singular = dec.min_singular;
  rep.gap = dec.gap;
  rep.singular_values = svd.s;
  rep.precision_bits = 53;
  if (dec.gap < opt.gap_factor) {
    bool resolved = false;
    for (int bits : opt.precision_ladder) {
      if (bits <= 53) continue;
      auto mp = detail::mp_rank(P, L, R, bits);
      if (mp.gap < opt.gap_factor) continue;
      rep.rank = mp.rank;
      rep.tau = mp.tau;
      rep.min_singular = mp.min_singular;
      rep.gap = mp.gap;
      rep.singular_values = mp.singular_values;
      rep.precision_bits = bits;
      V = mp.V;
      Ul = mp.U_left;
      resolved = true;
      break;
    }
    if (!resolved)
      throw Error(ErrorKind::AmbiguousRank, "singular gap " + std::to_string(dec.gap) + " below " +
                                                std::to_string(opt.gap_factor) + " at every precision");
  }
  rep.I = rep.cols - rep.rank;
  rep.J = rep.rank == std::min(rep.rows, rep.cols);
  rep.kernel = canonical_kernel_basis(V.rightCols(rep.I));
  rep.cokernel = Ul.rightCols(rep.rows - rep.rank);
  if (rep.J) rep.local_dim = std::max(rep.O, 0);
  return rep;
}

IsometryCheck isometry_kernel_check(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R,
                                    const JacobianReport& rep, double tol) {
  for (int n : L)
    if (n < 3) throw Error(ErrorKind::Precondition, "isometry check needs all orders >= 3");
  if (!P.trivalent()) throw Error(ErrorKind::Precondition, "isometry check needs trivalent vertices");
  const int f = P.num_faces();
  IsometryCheck out;
  out.kernel_dim = rep.I;
  out.rank_D = rep.rank;
  out.rank_Dhat = numerical_rank(hyperbolic_jacobian(P, R)).rank;
  if (out.rank_D != out.rank_Dhat) throw Error(ErrorKind::CheckFailed, "ranks of D and D-hat differ");
  if (rep.I != 6) throw Error(ErrorKind::CheckFailed, "kernel dimension " + std::to_string(rep.I) + " != 6");
  // so(1,3): three rotations and three boosts.
  std::vector<Eigen::Matrix4d> gens;
  for (int a = 1; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      Eigen::Matrix4d X = Eigen::Matrix4d::Zero();
      X(a, b) = 1;
      X(b, a) = -1;
      gens.push_back(X);
    }
  for (int a = 1; a < 4; ++a) {
    Eigen::Matrix4d X = Eigen::Matrix4d::Zero();
    X(0, a) = 1;
    X(a, 0) = 1;
    gens.push_back(X);
  }
  Eigen::MatrixXd Y(4 * f, 6);
  for (int g = 0; g < 6; ++g)
    for (int i = 0; i < f; ++i) {
      Eigen::Vector4d b(2 * R.normals[i][0], 2 * R.normals[i][1], 2 * R.normals[i][2], 2 * R.normals[i][3]);
      Y.block<4, 1>(4 * i, g) = gens[g] * b;
    }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(4 * f, 6);
  const Eigen::MatrixXd& K = rep.kernel;
  Eigen::MatrixXd resid = Q - K * (K.transpose() * Q);
  out.subspace_distance = Eigen::JacobiSVD<Eigen::MatrixXd>(resid).singularValues()(0);
  if (out.subspace_distance > tol)
    throw Error(ErrorKind::CheckFailed, "kernel is not spanned by isometry directions");
  return out;
}

}  // namespace coxdef
