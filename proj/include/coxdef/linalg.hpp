#pragma once
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace coxdef {

template <class T>
using MatrixT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using VectorT = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <class T>
struct SvdT {
  VectorT<T> s;  // descending, length = cols
  MatrixT<T> U;  // rows x cols, columns with s = 0 are zero
  MatrixT<T> V;  // cols x cols
};

// One-sided (Hestenes) Jacobi SVD. Columns are rotated pairwise until
// mutually orthogonal to working precision; the column norms are then the
// singular values, and V accumulates the rotations.
template <class T>
SvdT<T> jacobi_svd(const MatrixT<T>& A, T eps, int max_sweeps = 60) {
  using std::abs;
  using std::sqrt;
  const Eigen::Index m = A.rows(), n = A.cols();
  MatrixT<T> W = A;
  MatrixT<T> V = MatrixT<T>::Identity(n, n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        T alpha = W.col(p).squaredNorm();
        T beta = W.col(q).squaredNorm();
        T gamma = W.col(p).dot(W.col(q));
        if (gamma == T(0) || abs(gamma) <= eps * sqrt(alpha * beta)) continue;
        rotated = true;
        T zeta = (beta - alpha) / (T(2) * gamma);
        T sgn = zeta >= T(0) ? T(1) : T(-1);
        T t = sgn / (abs(zeta) + sqrt(T(1) + zeta * zeta));
        T c = T(1) / sqrt(T(1) + t * t);
        T s = c * t;
        for (Eigen::Index k = 0; k < m; ++k) {
          T wp = W(k, p), wq = W(k, q);
          W(k, p) = c * wp - s * wq;
          W(k, q) = s * wp + c * wq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          T vp = V(k, p), vq = V(k, q);
          V(k, p) = c * vp - s * vq;
          V(k, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<Eigen::Index> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<T> norms(n);
  for (Eigen::Index j = 0; j < n; ++j) norms[j] = W.col(j).norm();
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) { return norms[a] > norms[b]; });
  SvdT<T> out;
  out.s.resize(n);
  out.U = MatrixT<T>::Zero(m, n);
  out.V.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index k = idx[j];
    out.s(j) = norms[k];
    out.V.col(j) = V.col(k);
    if (norms[k] > T(0)) out.U.col(j) = W.col(k) / norms[k];
  }
  return out;
}

inline SvdT<double> jacobi_svd(const Eigen::MatrixXd& A) {
  return jacobi_svd<double>(A, std::numeric_limits<double>::epsilon());
}

// Rank decision from a singular value list: tau = max(rows, cols) * eps * s_max.
template <class T>
struct RankDecisionT {
  int rank = 0;
  T tau = T(0);
  T min_singular = T(0);  // smallest accepted singular value
  T gap = T(0);           // accepted/rejected ratio, or s_min / tau at full rank
};

template <class T>
RankDecisionT<T> decide_rank(const VectorT<T>& s, Eigen::Index rows, Eigen::Index cols, T eps) {
  RankDecisionT<T> d;
  if (s.size() == 0) return d;
  T smax = s(0);
  d.tau = T(static_cast<double>(std::max(rows, cols))) * eps * smax;
  // Only min(rows, cols) singular values can be nonzero.
  Eigen::Index cap = std::min<Eigen::Index>(rows, s.size());
  int r = 0;
  for (Eigen::Index k = 0; k < cap; ++k)
    if (s(k) > d.tau) ++r;
  d.rank = r;
  if (r == 0) return d;
  d.min_singular = s(r - 1);
  if (r < cap) {
    T rej = s(r);
    d.gap = rej > T(0) ? d.min_singular / rej : std::numeric_limits<double>::infinity();
  } else {
    d.gap = d.min_singular / d.tau;
  }
  return d;
}

// Least-squares minimum-norm solution through the SVD, truncated at tau.
template <class T>
VectorT<T> svd_solve(const SvdT<T>& svd, const VectorT<T>& b, T tau) {
  VectorT<T> x = VectorT<T>::Zero(svd.V.rows());
  for (Eigen::Index j = 0; j < svd.s.size(); ++j) {
    if (svd.s(j) <= tau) break;
    T coef = svd.U.col(j).dot(b) / svd.s(j);
    x += coef * svd.V.col(j);
  }
  return x;
}

}  // namespace coxdef
