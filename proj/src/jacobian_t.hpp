#pragma once
// Vinberg Jacobian for any scalar type.
#include <array>
#include <vector>

#include "coxdef/linalg.hpp"
#include "coxdef/vinberg.hpp"

namespace coxdef::detail {

template <class T>
T pair_eval(const std::array<T, 4>& a, const std::array<T, 4>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Rows: alpha_i at block i (Normalize); a_ij alpha_j at block i and a_ji
// alpha_i at block j (Product); alpha_i at block j (Zero1); alpha_j at block i
// (Zero2).
template <class T>
MatrixT<T> jacobian_t(const std::vector<Equation>& eqs, int faces, const std::vector<std::array<T, 4>>& alphas,
                      const std::vector<std::array<T, 4>>& b) {
  MatrixT<T> D = MatrixT<T>::Zero(static_cast<Eigen::Index>(eqs.size()), 4 * faces);
  for (size_t r = 0; r < eqs.size(); ++r) {
    const auto& q = eqs[r];
    auto put = [&](int block, const std::array<T, 4>& v, const T& scale) {
      for (int c = 0; c < 4; ++c) D(r, 4 * block + c) += scale * v[c];
    };
    switch (q.kind) {
      case EquationKind::Normalize: put(q.i, alphas[q.i], T(1)); break;
      case EquationKind::Product:
        put(q.i, alphas[q.j], pair_eval(alphas[q.i], b[q.j]));
        put(q.j, alphas[q.i], pair_eval(alphas[q.j], b[q.i]));
        break;
      case EquationKind::Zero1: put(q.j, alphas[q.i], T(1)); break;
      case EquationKind::Zero2: put(q.i, alphas[q.j], T(1)); break;
    }
  }
  return D;
}

}  // namespace coxdef::detail
