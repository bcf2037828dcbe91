#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coxdef/hyperbolic.hpp"
#include "coxdef/tangent.hpp"
#include "coxdef/vinberg.hpp"

namespace coxdef {

// Phi(t + c) = L c + Q(c) exactly; c is the shift from the hyperbolic point t.
struct QuadraticModel {
  VinbergSystem system;
  VinbergPoint point;
  Eigen::MatrixXd L;
  Eigen::VectorXd Q(const Eigen::VectorXd& c) const;
  // Symmetric bilinear form with B(c, c) = Q(c).
  Eigen::VectorXd B(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  Eigen::VectorXd Phi(const Eigen::VectorXd& c) const;  // residuals at t + c
};
QuadraticModel quadratic_model(const VinbergSystem& S, const VinbergPoint& p);

Eigen::VectorXd flatten(const VinbergPoint& p);
VinbergPoint unflatten(const Eigen::VectorXd& x);

struct ObstructionResult {
  bool obstructed = false;
  double relative_residual = 0;  // |L w + Q(v)| / |Q(v)|
  Eigen::VectorXd w;             // witness when unobstructed
};
// Unobstructed iff L w = -Q(v) is solvable (relative residual <= rel_tol).
ObstructionResult second_order_obstruction(const QuadraticModel& M, const Eigen::VectorXd& v, double rel_tol = 1e-8);

struct ConeResult {
  int dimension = 0;
  int kernel_dim = 0;
  int forms = 0;                  // independent projected quadratic forms
  std::string method;
  std::vector<Eigen::VectorXd> directions;  // unit kernel vectors in the cone
};
// Dimension of {s : P_coker Q(K s) = 0} for kernel basis K and cokernel
// basis C. TooManyKernelDims for more than three kernel dimensions.
ConeResult cone_dimension(const QuadraticModel& M, const Eigen::MatrixXd& K, const Eigen::MatrixXd& C);

struct TrackOptions {
  double delta = 0.02;
  int rungs = 5;
  double tol = 1e-10;
  int max_iter = 60;
};
struct TrackEvidence {
  bool success = false;
  std::vector<double> deltas, residuals, distances;
  std::vector<int> iterations;
  std::string failure;
};
// Newton correction of t + delta v (+ delta^2 w) orthogonally to v, for a
// ladder of step sizes.
TrackEvidence curve_track(const VinbergSystem& S, const VinbergPoint& p, const Eigen::VectorXd& v,
                          const TrackOptions& opt = {}, const Eigen::VectorXd& w = {});
// Point found at one step size (empty when Newton fails).
std::optional<VinbergPoint> track_point(const VinbergSystem& S, const VinbergPoint& p, const Eigen::VectorXd& v,
                                        double delta, const TrackOptions& opt = {}, const Eigen::VectorXd& w = {});

// Exact one-parameter family through the hyperbolic point.
struct SymmetricFamily {
  std::string name;
  HyperbolicRealization realization;  // hyperbolic structure at the base
  VinbergSystem system;
  double base_parameter = 0;          // hyperbolic value of the parameter
  std::function<VinbergPoint(double)> point;
  std::vector<std::string> parameter_names;
  // max |Phi| over `samples` parameters spread on [base - width, base + width]
  double max_residual(int samples = 20, double width = 0.05) const;
};
SymmetricFamily symmetric_slice_prism(int n);  // UnsupportedN for n < 5
SymmetricFamily symmetric_slice_do13();

enum class Certification {
  FullRank,         // Jacobian of full rank
  ExactGroebner,    // free variables of an exact basis
  ExactFamily,      // exact family, with I = 1 as upper bound when equal
  ObstructionRigid, // every kernel direction obstructed at second order
  NumericalEvidence,
  Undecided,
};
const char* certification_name(Certification c);

struct LocalDimVerdict {
  int A = -1;
  bool lower_bound = false;  // A is only known to be at least this value
  Certification certification = Certification::Undecided;
  std::string method;
  std::string status;  // e.g. "rigid, second-order certificate"
  std::vector<std::string> details;
  int cone_dim = -1;
  std::vector<std::string> free_variables;
};

struct LocalDimOptions {
  bool use_groebner = true;
  bool allow_slow_groebner = false;
  bool use_families = true;
  size_t term_budget = 1000000;
  TrackOptions track;
};

// Decision cascade: full rank, symmetric family, exact basis, then cone
// dimension with curve tracking.
LocalDimVerdict local_dimension(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R,
                                const JacobianReport& rep, const LocalDimOptions& opt = {});
// Branch (4) alone, for cross-checks.
LocalDimVerdict cone_and_track(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R,
                               const JacobianReport& rep, const LocalDimOptions& opt = {});
// The symmetric family applicable to (P, L), if any.
std::optional<SymmetricFamily> family_for(const Polyhedron& P, const Labeling& L);

}  // namespace coxdef
