#pragma once
// Multiprecision re-solve and rank decision, used when binary64 is ambiguous.
#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coxdef/hyperbolic.hpp"

namespace coxdef::detail {

struct MpRank {
  int bits = 0;
  int rank = 0;
  double tau = 0, min_singular = 0, gap = 0;
  double residual = 0;  // hyperbolic residual after refinement
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd V;       // right singular vectors of D
  Eigen::MatrixXd U_left;  // right singular vectors of D^T (left of D), N x N
};

MpRank mp_rank(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R, int bits);

// Normals refined at the given precision, as decimal strings.
std::vector<std::array<std::string, 4>> mp_normal_strings(const Polyhedron& P, const Labeling& L,
                                                          const HyperbolicRealization& R, int bits);

}  // namespace coxdef::detail
