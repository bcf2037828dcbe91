#pragma once
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coxdef/field.hpp"
#include "coxdef/polytope.hpp"

namespace coxdef {

constexpr int kMaxVars = 32;
using Monomial = std::array<uint8_t, kMaxVars>;

struct Term {
  Monomial exp{};
  FieldElem coef;
};

// Terms sorted by decreasing monomial, no zero coefficients.
struct MultiPoly {
  std::vector<Term> terms;
  bool is_zero() const { return terms.empty(); }
  const Term& lead() const { return terms.front(); }
  int total_degree() const;
};

// Lexicographic order: variable 0 is the greatest.
class PolyRing {
 public:
  PolyRing(std::shared_ptr<const Field> field, std::vector<std::string> vars);
  const Field& field() const { return *field_; }
  std::shared_ptr<const Field> field_ptr() const { return field_; }
  int num_vars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  int var_index(const std::string& name) const;  // -1 when absent

  static bool less(const Monomial& a, const Monomial& b);  // a < b
  static bool divides(const Monomial& a, const Monomial& b);
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static Monomial quotient(const Monomial& a, const Monomial& b);  // a / b
  static Monomial product(const Monomial& a, const Monomial& b);
  static bool coprime(const Monomial& a, const Monomial& b);

  MultiPoly zero() const { return {}; }
  MultiPoly constant(const FieldElem& c) const;
  MultiPoly constant(const Rational& q) const { return constant(field_->from_rational(q)); }
  MultiPoly var(int i) const;
  MultiPoly var(const std::string& name) const;
  MultiPoly add(const MultiPoly& a, const MultiPoly& b) const;
  MultiPoly sub(const MultiPoly& a, const MultiPoly& b) const;
  MultiPoly mul(const MultiPoly& a, const MultiPoly& b) const;
  MultiPoly scale(const MultiPoly& a, const FieldElem& c) const;
  // a - c * m * b
  MultiPoly sub_mul(const MultiPoly& a, const FieldElem& c, const Monomial& m, const MultiPoly& b) const;
  MultiPoly monic(const MultiPoly& a) const;
  bool equal(const MultiPoly& a, const MultiPoly& b) const { return sub(a, b).is_zero(); }
  // Coefficient of the given variable in the linear part (value of the
  // partial derivative at the origin).
  FieldElem linear_coefficient(const MultiPoly& a, int var) const;
  FieldElem constant_term(const MultiPoly& a) const;
  std::vector<int> variables_of(const MultiPoly& a) const;
  double evaluate(const MultiPoly& a, const std::vector<double>& x) const;
  std::string to_string(const MultiPoly& a) const;
  std::string monomial_string(const Monomial& m) const;

 private:
  std::shared_ptr<const Field> field_;
  std::vector<std::string> vars_;
};

struct GroebnerOptions {
  size_t term_budget = 1000000;  // total terms held by the basis and the polynomial being reduced
};

struct GroebnerBasis {
  std::vector<MultiPoly> generators;  // reduced, monic, increasing leading monomial
  std::vector<std::string> variable_order;  // greatest first
  size_t pairs_considered = 0, pairs_reduced = 0, pairs_skipped = 0;
};

// Full reduction of f by G (monic generators).
MultiPoly reduce(const PolyRing& R, const MultiPoly& f, const std::vector<MultiPoly>& G);
MultiPoly s_polynomial(const PolyRing& R, const MultiPoly& f, const MultiPoly& g);
// Normal selection strategy, coprime and chain criteria; ResourceExceeded
// past the term budget.
GroebnerBasis buchberger(const PolyRing& R, const std::vector<MultiPoly>& generators, const GroebnerOptions& opt = {});
bool is_groebner(const PolyRing& R, const std::vector<MultiPoly>& G);

// h with h^2 = c f for a nonzero constant c, when f is a perfect square.
std::optional<MultiPoly> square_root(const PolyRing& R, const MultiPoly& f);
// Replaces every generator that is a perfect square by its root.
std::vector<MultiPoly> radical_step(const PolyRing& R, const std::vector<MultiPoly>& generators, bool* changed = nullptr);

// sum lhs = sum rhs with entries (multiplier, index into the nonlinear
// generators of the basis, 0-based).
struct SyzygySpec {
  std::vector<std::pair<MultiPoly, int>> lhs, rhs;
  std::string text;
};

struct BasisAnalysis {
  std::vector<int> free_vars;        // independent modulo leading monomials
  std::vector<int> leading_vars;     // variables that are leading monomials
  std::vector<int> nonlinear;        // basis indices of nonlinear generators
  std::vector<int> solving;          // basis indices solved for the dependent variables
  std::vector<int> redundant;        // basis indices implied through a syzygy
  std::vector<std::string> chains;   // "c52 <- c11" style dependencies
  std::vector<std::string> syzygies_verified;
  int local_dimension = -1;
};
// Local dimension at the origin = number of free variables, certified by an
// invertible linear part in the dependent variables and syzygies for the
// remaining generators. NonTriangular otherwise.
BasisAnalysis analyze_basis(const PolyRing& R, const std::vector<MultiPoly>& basis,
                            const std::vector<SyzygySpec>& syzygies);

// Exact Vinberg systems in shifted coordinates c = b - 2 nu for catalog
// cubes with closed-form normals.
struct ExactSystem {
  std::string name;
  std::shared_ptr<Field> field;
  std::shared_ptr<PolyRing> ring;
  std::vector<MultiPoly> equations;       // in the order of the Vinberg system
  std::vector<int> face_label;            // polyhedron face -> catalog label 1..f
  std::vector<std::array<FieldElem, 4>> normals;  // by label - 1
  std::vector<SyzygySpec> syzygies;       // expressed on the nonlinear generators
  bool slow = false;                       // long-running basis computation
  bool needs_radical = false;
};
// Available for the two worked examples on the catalog cube, any symmetric
// copy of their labelings.
std::optional<ExactSystem> exact_system(const Polyhedron& P, const Labeling& L);
std::vector<std::string> exact_system_names();

struct ExactVerdict {
  int A = -1;
  GroebnerBasis basis;
  BasisAnalysis analysis;
  int radical_steps = 0;
  std::string field_description;
  std::vector<std::string> free_variables;
};
struct ExactOptions {
  GroebnerOptions groebner;
  bool allow_slow = false;
};
// nullopt when no exact data exists or the system is gated as slow.
std::optional<ExactVerdict> exact_local_dimension(const Polyhedron& P, const Labeling& L, const ExactOptions& opt = {});
ExactVerdict exact_local_dimension(const ExactSystem& S, const ExactOptions& opt = {});

// Plain-text export with a field header.
std::string basis_text(const PolyRing& R, const GroebnerBasis& G);

}  // namespace coxdef
