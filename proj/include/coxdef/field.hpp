#pragma once
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace coxdef {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Coordinates in the power basis of a field tower; coefficient of
// theta_0^e0 theta_1^e1 ... at index e0 + d0 (e1 + d1 (e2 + ...)).
struct FieldElem {
  std::vector<Rational> c;
  bool operator==(const FieldElem& o) const { return c == o.c; }
};

// Tower Q = K_0 < K_1 < ... where K_{g+1} = K_g(theta_g) and theta_g is the
// real root of a monic irreducible polynomial over K_g inside an isolating
// rational interval. Elements are only valid for the tower they were created
// in; adjoin before creating elements.
class Field {
 public:
  Field() = default;

  // theta^2 = a, positive root. Checks that a is positive and not a square.
  void adjoin_sqrt(const std::string& name, const FieldElem& a);
  // Monic polynomial over Q with coefficients c_0..c_{d-1}; the interval
  // (lo, hi) must contain exactly one real root (checked with a Sturm
  // sequence), and the polynomial must be irreducible (checked modulo primes).
  void adjoin_root(const std::string& name, const std::vector<Rational>& monic_coeffs, const Rational& lo,
                   const Rational& hi);

  int levels() const { return static_cast<int>(degree_.size()); }
  int dimension() const { return dim_.empty() ? 1 : dim_.back(); }
  const std::string& generator_name(int g) const { return names_[g]; }
  std::string describe() const;

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_rational(const Rational& q) const;
  FieldElem generator(int g) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem scale(const FieldElem& a, const Rational& q) const;
  FieldElem inv(const FieldElem& a) const;  // DivisionByZero on 0
  FieldElem div(const FieldElem& a, const FieldElem& b) const { return mul(a, inv(b)); }
  bool is_zero(const FieldElem& a) const;
  bool is_one(const FieldElem& a) const;
  bool is_rational(const FieldElem& a) const;

  // Sign of the real embedding, refined until decided.
  int sign(const FieldElem& a) const;
  double to_double(const FieldElem& a) const;
  std::string to_string(const FieldElem& a) const;

  // Exact square root inside the field, when one exists (towers of square
  // roots only; returns nullopt otherwise).
  std::optional<FieldElem> sqrt(const FieldElem& a) const;

 private:
  using Vec = std::vector<Rational>;
  std::vector<int> degree_;
  std::vector<int> dim_;             // dim_[g] = dimension of K_{g+1}
  std::vector<std::vector<Vec>> minpoly_;  // coefficients in K_g, monic term omitted
  std::vector<Rational> lo_, hi_;
  std::vector<std::string> names_;
  std::vector<bool> quadratic_;

  int dim_of(int level) const { return level == 0 ? 1 : dim_[level - 1]; }
  void mul_rec(const Rational* a, const Rational* b, Rational* out, int level) const;
  Vec mul_level(const Vec& a, const Vec& b, int level) const;
  Vec inv_level(const Vec& a, int level) const;
  std::optional<Vec> sqrt_level(const Vec& a, int level) const;
  bool zero_vec(const Vec& a) const;
  void push_level(const std::string& name, int degree, std::vector<Vec> coeffs, const Rational& lo,
                  const Rational& hi, bool quadratic);
  friend struct FieldNumeric;
};

// Irreducibility of an integer polynomial over Q via factorization degree
// patterns modulo several primes; true only when proven.
bool proven_irreducible_over_q(const std::vector<Integer>& coeffs_low_to_high);
// Number of distinct real roots in the open interval (lo, hi).
int sturm_count(const std::vector<Rational>& coeffs_low_to_high, const Rational& lo, const Rational& hi);

}  // namespace coxdef
