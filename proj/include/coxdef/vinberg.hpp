#pragma once
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coxdef/hyperbolic.hpp"
#include "coxdef/polytope.hpp"

namespace coxdef {

enum class EquationKind { Normalize, Product, Zero1, Zero2 };
const char* equation_kind_name(EquationKind k);

// Normalize(i): a_ii = 2. Product(i,j): a_ij a_ji = 4cos^2(pi/n).
// Zero1(i,j): a_ij = 0. Zero2(i,j): a_ji = 0.
struct Equation {
  EquationKind kind;
  int i = 0, j = 0;
  int order = 0;
};

struct VinbergSystem {
  int faces = 0;
  std::vector<Vec4> alphas;  // coordinate vectors J nu_i
  std::vector<Equation> equations;
  int num_equations() const { return static_cast<int>(equations.size()); }
  int num_variables() const { return 4 * faces; }
};

using VinbergPoint = std::vector<Vec4>;  // reflection vectors b_i

// Equation list only; shared by every precision.
std::vector<Equation> vinberg_equations(const Polyhedron& P, const Labeling& L);
VinbergSystem build_system(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R);
VinbergPoint hyperbolic_point(const HyperbolicRealization& R);

// Euclidean pairing of a covector with a vector.
double evaluate(const Vec4& alpha, const Vec4& b);

// Id - alpha (x) b; requires alpha(b) = 2.
Eigen::Matrix4d reflection_matrix(const Vec4& alpha, const Vec4& b, double tol = 1e-9);

Eigen::VectorXd residuals(const VinbergSystem& S, const VinbergPoint& p);

// a_ij = alpha_i(b_j)
Eigen::MatrixXd cartan_matrix(const VinbergSystem& S, const VinbergPoint& p);

struct CartanReport {
  bool c1 = false;             // a_ij <= 0 off the diagonal, a_ij = 0 iff a_ji = 0
  bool c2 = false;             // a_ii = 2, products 4cos^2 on edges, >= 4 elsewhere
  bool symmetrizable = false;  // D A symmetric for a positive diagonal D
  int positive = 0, negative = 0, zero = 0;  // signature of the symmetrized matrix
  bool hyperbolic = false;     // symmetrizable with exactly one negative, three positive
  std::vector<std::string> failures;
};
CartanReport cartan_checks(const Eigen::MatrixXd& A, const Polyhedron& P, const Labeling& L, double tol = 1e-8);

}  // namespace coxdef
