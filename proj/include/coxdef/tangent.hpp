#pragma once
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "coxdef/hyperbolic.hpp"
#include "coxdef/vinberg.hpp"

namespace coxdef {

// N x 4f Jacobian of the Vinberg system at p.
Eigen::MatrixXd jacobian(const VinbergSystem& S, const VinbergPoint& p);
// (f + e) x 4f Jacobian of the hyperbolic equations at b = 2 nu.
Eigen::MatrixXd hyperbolic_jacobian(const Polyhedron& P, const HyperbolicRealization& R);

struct RankInfo {
  int rank = 0;
  double tau = 0;
  double min_singular = 0;
  double gap = 0;
  bool ambiguous = false;  // gap below the required factor
  Eigen::VectorXd singular_values;
};
// tau = max(rows, cols) * eps * s_max; ambiguous when the gap is < gap_factor.
RankInfo numerical_rank(const Eigen::MatrixXd& M, double gap_factor = 1e3);

struct TangentOptions {
  double gap_factor = 1e3;
  std::vector<int> precision_ladder{53, 256, 1024};  // bits
};

struct JacobianReport {
  int rows = 0, cols = 0;
  int rank = 0;
  int I = 0;  // 4f - rank
  int O = 0;  // 3f - e - e2
  bool J = false;
  double min_singular = 0;  // S: smallest accepted singular value
  double tau = 0;
  double gap = 0;
  int precision_bits = 53;
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd kernel;    // 4f x I, canonical orthonormal basis
  Eigen::MatrixXd cokernel;  // N x (N - rank), orthonormal
  AnchorKind anchor = AnchorKind::None;
  std::optional<int> local_dim;  // set when the full-rank criterion decides
};

// Rank analysis of D at the hyperbolic point with precision escalation;
// throws AmbiguousRank when no precision on the ladder resolves the gap.
JacobianReport analyze(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R,
                       const TangentOptions& opt = {});

// Orthonormal basis of span(K) made unique: orthonormalized reduced row
// echelon form, first nonzero coordinate positive.
Eigen::MatrixXd canonical_kernel_basis(const Eigen::MatrixXd& K);

struct IsometryCheck {
  int kernel_dim = 0;
  double subspace_distance = 0;
  int rank_D = 0, rank_Dhat = 0;
};
// Kernel of D equals {(X b_1, ..., X b_f)} for X in the Lorentz Lie algebra.
// Requires all orders >= 3 and trivalent vertices; throws CheckFailed.
IsometryCheck isometry_kernel_check(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R,
                                    const JacobianReport& rep, double tol = 1e-9);

}  // namespace coxdef
