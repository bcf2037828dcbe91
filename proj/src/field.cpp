#include "coxdef/field.hpp"

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <sstream>

#include <boost/multiprecision/mpfr.hpp>

#include "coxdef/error.hpp"

namespace coxdef {

namespace {

using Mpf = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                          boost::multiprecision::et_off>;

Mpf to_mpf(const Rational& q) {
  return Mpf(Integer(boost::multiprecision::numerator(q))) / Mpf(Integer(boost::multiprecision::denominator(q)));
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Integer n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
  Integer rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}

}  // namespace

// Numerical embedding at a given working precision.
struct FieldNumeric {
  const Field& F;
  unsigned digits;
  std::vector<Mpf> theta;

  FieldNumeric(const Field& f, unsigned bits) : F(f), digits(bits * 30103 / 100000 + 5) {
    Mpf::default_precision(digits);
    for (int g = 0; g < F.levels(); ++g) theta.push_back(root(g));
  }

  Mpf value(const Rational* a, int level) const {
    if (level == 0) return to_mpf(a[0]);
    const int s = F.dim_of(level - 1), d = F.degree_[level - 1];
    Mpf acc = 0;
    for (int t = d - 1; t >= 0; --t) acc = acc * theta[level - 1] + value(a + t * s, level - 1);
    return acc;
  }

  Mpf poly_at(int g, const Mpf& x) const {
    const int d = F.degree_[g];
    Mpf acc = 1;
    for (int t = d - 1; t >= 0; --t) acc = acc * x + value(F.minpoly_[g][t].data(), g);
    return acc;
  }

  Mpf root(int g) {
    if (F.quadratic_[g]) {
      Mpf a = -value(F.minpoly_[g][0].data(), g);
      return boost::multiprecision::sqrt(a);
    }
    Mpf lo = to_mpf(F.lo_[g]), hi = to_mpf(F.hi_[g]);
    Mpf flo = poly_at(g, lo);
    const int iters = static_cast<int>(digits * 3.33) + 10;
    for (int k = 0; k < iters; ++k) {
      Mpf mid = (lo + hi) / 2;
      Mpf fm = poly_at(g, mid);
      if (fm == 0) return mid;
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return (lo + hi) / 2;
  }
};

void Field::push_level(const std::string& name, int degree, std::vector<Vec> coeffs, const Rational& lo,
                       const Rational& hi, bool quadratic) {
  int prev = dimension();
  degree_.push_back(degree);
  dim_.push_back(prev * degree);
  minpoly_.push_back(std::move(coeffs));
  lo_.push_back(lo);
  hi_.push_back(hi);
  names_.push_back(name);
  quadratic_.push_back(quadratic);
}

void Field::adjoin_sqrt(const std::string& name, const FieldElem& a) {
  if (static_cast<int>(a.c.size()) != dimension()) throw Error(ErrorKind::Precondition, "element of another field");
  if (sign(a) <= 0) throw Error(ErrorKind::Precondition, "square root of a non-positive element");
  if (sqrt_level(a.c, levels())) throw Error(ErrorKind::CheckFailed, name + ": radicand is already a square");
  double v = std::sqrt(to_double(a));
  Rational lo(static_cast<long long>(v * 1024) - 1, 1024), hi(static_cast<long long>(v * 1024) + 2, 1024);
  if (lo <= 0) lo = Rational(1, 1 << 20);
  Vec m0 = a.c;
  for (auto& q : m0) q = -q;
  push_level(name, 2, {m0, Vec(m0.size(), Rational(0))}, lo, hi, true);
}

void Field::adjoin_root(const std::string& name, const std::vector<Rational>& monic, const Rational& lo,
                        const Rational& hi) {
  if (levels() != 0) throw Error(ErrorKind::Precondition, "general extensions only over the rationals");
  const int d = static_cast<int>(monic.size());
  std::vector<Rational> full = monic;
  full.push_back(1);
  if (sturm_count(full, lo, hi) != 1) throw Error(ErrorKind::CheckFailed, name + ": interval does not isolate a root");
  Integer den = 1;
  for (const auto& q : full) den = boost::multiprecision::lcm(den, Integer(boost::multiprecision::denominator(q)));
  std::vector<Integer> ints;
  for (const auto& q : full) ints.push_back(Integer(boost::multiprecision::numerator(Rational(q * den))));
  if (!proven_irreducible_over_q(ints)) throw Error(ErrorKind::CheckFailed, name + ": irreducibility not proven");
  std::vector<Vec> coeffs;
  for (const auto& q : monic) coeffs.push_back({q});
  push_level(name, d, coeffs, lo, hi, d == 2);
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "Q";
  for (int g = 0; g < levels(); ++g) {
    os << "(" << names_[g] << ": " << names_[g] << "^" << degree_[g];
    const auto& m = minpoly_[g];
    for (int t = degree_[g] - 1; t >= 0; --t) {
      FieldElem e{m[t]};
      e.c.resize(dimension());
      if (zero_vec(m[t])) continue;
      os << " + (" << to_string(e) << ")";
      if (t > 0) os << "*" << names_[g] << (t > 1 ? "^" + std::to_string(t) : "");
    }
    os << " = 0, root in [" << lo_[g] << ", " << hi_[g] << "])";
  }
  return os.str();
}

FieldElem Field::zero() const { return {Vec(dimension(), Rational(0))}; }
FieldElem Field::one() const { return from_rational(1); }
FieldElem Field::from_rational(const Rational& q) const {
  FieldElem e = zero();
  e.c[0] = q;
  return e;
}
FieldElem Field::generator(int g) const {
  FieldElem e = zero();
  e.c[dim_of(g)] = 1;
  return e;
}

FieldElem Field::add(const FieldElem& a, const FieldElem& b) const {
  FieldElem r = a;
  for (size_t k = 0; k < r.c.size(); ++k) r.c[k] += b.c[k];
  return r;
}
FieldElem Field::sub(const FieldElem& a, const FieldElem& b) const {
  FieldElem r = a;
  for (size_t k = 0; k < r.c.size(); ++k) r.c[k] -= b.c[k];
  return r;
}
FieldElem Field::neg(const FieldElem& a) const {
  FieldElem r = a;
  for (auto& q : r.c) q = -q;
  return r;
}
FieldElem Field::scale(const FieldElem& a, const Rational& q) const {
  FieldElem r = a;
  for (auto& x : r.c) x *= q;
  return r;
}

bool Field::zero_vec(const Vec& a) const {
  for (const auto& q : a)
    if (q != 0) return false;
  return true;
}
bool Field::is_zero(const FieldElem& a) const { return zero_vec(a.c); }
bool Field::is_rational(const FieldElem& a) const {
  for (size_t k = 1; k < a.c.size(); ++k)
    if (a.c[k] != 0) return false;
  return true;
}
bool Field::is_one(const FieldElem& a) const { return is_rational(a) && a.c[0] == 1; }

void Field::mul_rec(const Rational* a, const Rational* b, Rational* out, int level) const {
  if (level == 0) {
    out[0] = a[0] * b[0];
    return;
  }
  const int g = level - 1, d = degree_[g], s = dim_of(g);
  auto block_zero = [&](const Rational* p) {
    for (int k = 0; k < s; ++k)
      if (p[k] != 0) return false;
    return true;
  };
  Vec tmp((2 * d - 1) * s, Rational(0)), prod(s);
  std::vector<bool> za(d), zb(d);
  for (int i = 0; i < d; ++i) {
    za[i] = block_zero(a + i * s);
    zb[i] = block_zero(b + i * s);
  }
  for (int i = 0; i < d; ++i) {
    if (za[i]) continue;
    for (int j = 0; j < d; ++j) {
      if (zb[j]) continue;
      mul_rec(a + i * s, b + j * s, prod.data(), g);
      for (int k = 0; k < s; ++k) tmp[(i + j) * s + k] += prod[k];
    }
  }
  // theta^d = -sum m_t theta^t
  for (int k = 2 * d - 2; k >= d; --k) {
    if (block_zero(tmp.data() + k * s)) continue;
    for (int t = 0; t < d; ++t) {
      if (zero_vec(minpoly_[g][t])) continue;
      mul_rec(tmp.data() + k * s, minpoly_[g][t].data(), prod.data(), g);
      for (int q = 0; q < s; ++q) tmp[(k - d + t) * s + q] -= prod[q];
    }
  }
  std::copy(tmp.begin(), tmp.begin() + d * s, out);
}

Field::Vec Field::mul_level(const Vec& a, const Vec& b, int level) const {
  Vec out(dim_of(level));
  mul_rec(a.data(), b.data(), out.data(), level);
  return out;
}

FieldElem Field::mul(const FieldElem& a, const FieldElem& b) const { return {mul_level(a.c, b.c, levels())}; }

// Extended Euclid on polynomials over K_{level-1} modulo the minimal polynomial.
Field::Vec Field::inv_level(const Vec& a, int level) const {
  if (zero_vec(a)) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (level == 0) return {1 / a[0]};
  const int g = level - 1, d = degree_[g], s = dim_of(g);
  using Poly = std::vector<Vec>;  // coefficients low to high in K_g
  auto trim = [&](Poly& p) {
    while (!p.empty() && zero_vec(p.back())) p.pop_back();
  };
  auto sub_mul = [&](Poly& p, const Poly& q, const Vec& c, int shift) {  // p -= c x^shift q
    if (p.size() < q.size() + shift) p.resize(q.size() + shift, Vec(s, Rational(0)));
    for (size_t k = 0; k < q.size(); ++k) {
      Vec t = mul_level(q[k], c, g);
      for (int r = 0; r < s; ++r) p[k + shift][r] -= t[r];
    }
  };
  Poly r0(d + 1, Vec(s, Rational(0))), r1(d);
  for (int t = 0; t < d; ++t) r0[t] = minpoly_[g][t];
  r0[d][0] = 1;
  for (int t = 0; t < d; ++t) r1[t] = Vec(a.begin() + t * s, a.begin() + (t + 1) * s);
  trim(r1);
  Vec one(s, Rational(0));
  one[0] = 1;
  Poly s0, s1{one};
  while (r1.size() > 1) {
    Poly q, rem = r0;
    Vec lead_inv = inv_level(r1.back(), g);
    while (rem.size() >= r1.size()) {
      Vec c = mul_level(rem.back(), lead_inv, g);
      int shift = static_cast<int>(rem.size() - r1.size());
      if (static_cast<int>(q.size()) <= shift) q.resize(shift + 1, Vec(s, Rational(0)));
      q[shift] = c;
      sub_mul(rem, r1, c, shift);
      rem.pop_back();
      trim(rem);
    }
    Poly ns = s0;
    for (size_t k = 0; k < q.size(); ++k)
      if (!zero_vec(q[k])) sub_mul(ns, s1, q[k], static_cast<int>(k));
    trim(ns);
    s0 = std::move(s1);
    s1 = std::move(ns);
    r0 = std::move(r1);
    r1 = std::move(rem);
    if (r1.empty()) throw Error(ErrorKind::DivisionByZero, "minimal polynomial is reducible");
  }
  Vec c = inv_level(r1[0], g);
  Vec out(d * s, Rational(0));
  for (size_t k = 0; k < s1.size(); ++k) {
    Vec t = mul_level(s1[k], c, g);
    std::copy(t.begin(), t.end(), out.begin() + k * s);
  }
  return out;
}

FieldElem Field::inv(const FieldElem& a) const { return {inv_level(a.c, levels())}; }

std::optional<Field::Vec> Field::sqrt_level(const Vec& a, int level) const {
  if (level == 0) {
    auto r = rational_sqrt(a[0]);
    if (!r) return std::nullopt;
    return Vec{*r};
  }
  const int g = level - 1, s = dim_of(g);
  if (!quadratic_[g]) return std::nullopt;
  Vec x(a.begin(), a.begin() + s), y(a.begin() + s, a.begin() + 2 * s);
  Vec b = minpoly_[g][0];
  for (auto& q : b) q = -q;
  Vec out(2 * s, Rational(0));
  if (zero_vec(y)) {
    if (auto r = sqrt_level(x, g)) {
      std::copy(r->begin(), r->end(), out.begin());
      return out;
    }
    if (auto r = sqrt_level(mul_level(x, inv_level(b, g), g), g)) {
      std::copy(r->begin(), r->end(), out.begin() + s);
      return out;
    }
    return std::nullopt;
  }
  Vec N = mul_level(x, x, g), by2 = mul_level(b, mul_level(y, y, g), g);
  for (int k = 0; k < s; ++k) N[k] -= by2[k];
  auto n = sqrt_level(N, g);
  if (!n) return std::nullopt;
  for (int sg : {1, -1}) {
    Vec u2(s);
    for (int k = 0; k < s; ++k) u2[k] = (x[k] + sg * (*n)[k]) / 2;
    auto u = sqrt_level(u2, g);
    if (!u || zero_vec(*u)) continue;
    Vec two_u = *u;
    for (auto& q : two_u) q *= 2;
    Vec v = mul_level(y, inv_level(two_u, g), g);
    std::copy(u->begin(), u->end(), out.begin());
    std::copy(v.begin(), v.end(), out.begin() + s);
    return out;
  }
  return std::nullopt;
}

std::optional<FieldElem> Field::sqrt(const FieldElem& a) const {
  if (is_rational(a)) {
    auto q = rational_sqrt(a.c[0]);
    if (q) return from_rational(*q);
  }
  auto r = sqrt_level(a.c, levels());
  if (!r) return std::nullopt;
  FieldElem e{*r};
  if (sign(e) < 0) e = neg(e);
  return e;
}

int Field::sign(const FieldElem& a) const {
  if (is_zero(a)) return 0;
  if (is_rational(a)) return a.c[0] > 0 ? 1 : -1;
  unsigned saved = Mpf::default_precision();
  int out = 0;
  for (unsigned bits = 128; bits <= 8192; bits *= 2) {
    FieldNumeric num(*this, bits);
    Mpf v = num.value(a.c.data(), levels());
    Mpf bound = boost::multiprecision::ldexp(Mpf(1), -static_cast<int>(bits / 2));
    if (boost::multiprecision::abs(v) > bound || bits == 8192) {
      out = v > 0 ? 1 : -1;
      break;
    }
  }
  Mpf::default_precision(saved);
  return out;
}

double Field::to_double(const FieldElem& a) const {
  unsigned saved = Mpf::default_precision();
  FieldNumeric num(*this, 128);
  double v = num.value(a.c.data(), levels()).convert_to<double>();
  Mpf::default_precision(saved);
  return v;
}

std::string Field::to_string(const FieldElem& a) const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < a.c.size(); ++k) {
    if (a.c[k] == 0) continue;
    std::string mono;
    size_t rem = k;
    for (int g = 0; g < levels(); ++g) {
      size_t e = rem % degree_[g];
      rem /= degree_[g];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names_[g];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    Rational q = a.c[k];
    if (!first) os << (q < 0 ? " - " : " + ");
    else if (q < 0) os << "-";
    Rational aq = q < 0 ? Rational(-q) : q;
    if (mono.empty()) os << aq;
    else if (aq == 1) os << mono;
    else os << aq << "*" << mono;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// Univariate checks over Q.

namespace {

using Poly = std::vector<Rational>;  // low to high

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_rem(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t k = 0; k < b.size(); ++k) a[k + shift] -= c * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

int sign_at(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
}

// Polynomials modulo a prime, low to high.
using PolyP = std::vector<int64_t>;

int64_t modp(int64_t a, int64_t p) { return ((a % p) + p) % p; }

int64_t pow_mod(int64_t b, int64_t e, int64_t p) {
  int64_t r = 1;
  b = modp(b, p);
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

void trim_p(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP rem_p(PolyP a, const PolyP& b, int64_t p) {
  trim_p(a);
  int64_t inv = pow_mod(b.back(), p - 2, p);
  while (a.size() >= b.size() && !a.empty()) {
    int64_t c = a.back() * inv % p;
    size_t shift = a.size() - b.size();
    for (size_t k = 0; k < b.size(); ++k) a[k + shift] = modp(a[k + shift] - c * b[k], p);
    a.pop_back();
    trim_p(a);
  }
  return a;
}

PolyP div_p(PolyP a, const PolyP& b, int64_t p) {
  trim_p(a);
  if (a.size() < b.size()) return {};
  PolyP q(a.size() - b.size() + 1, 0);
  int64_t inv = pow_mod(b.back(), p - 2, p);
  while (a.size() >= b.size() && !a.empty()) {
    int64_t c = a.back() * inv % p;
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t k = 0; k < b.size(); ++k) a[k + shift] = modp(a[k + shift] - c * b[k], p);
    a.pop_back();
    trim_p(a);
  }
  return q;
}

PolyP gcd_p(PolyP a, PolyP b, int64_t p) {
  trim_p(a);
  trim_p(b);
  while (!b.empty()) {
    PolyP r = rem_p(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

PolyP mulmod_p(const PolyP& a, const PolyP& b, const PolyP& m, int64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyP r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return rem_p(r, m, p);
}

PolyP powmod_p(PolyP b, int64_t e, const PolyP& m, int64_t p) {
  PolyP r{1};
  b = rem_p(b, m, p);
  while (e) {
    if (e & 1) r = mulmod_p(r, b, m, p);
    b = mulmod_p(b, b, m, p);
    e >>= 1;
  }
  return r;
}

// Degrees of the irreducible factors of a squarefree polynomial mod p.
std::vector<int> factor_degrees(PolyP f, int64_t p) {
  std::vector<int> out;
  PolyP h{0, 1};
  for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
    h = powmod_p(h, p, f, p);
    PolyP hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = modp(hx[1] - 1, p);
    trim_p(hx);
    PolyP g = gcd_p(f, hx, p);
    int gd = static_cast<int>(g.size()) - 1;
    if (gd > 0) {
      for (int k = 0; k < gd / d; ++k) out.push_back(d);
      f = div_p(f, g, p);
      h = rem_p(h, f, p);
    }
  }
  if (f.size() > 1) out.push_back(static_cast<int>(f.size()) - 1);
  return out;
}

}  // namespace

int sturm_count(const std::vector<Rational>& coeffs, const Rational& lo, const Rational& hi) {
  Poly p0 = coeffs;
  trim(p0);
  Poly p1;
  for (size_t k = 1; k < p0.size(); ++k) p1.push_back(p0[k] * static_cast<int>(k));
  std::vector<Poly> seq{p0, p1};
  while (seq.back().size() > 1) {
    Poly r = poly_rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& q : r) q = -q;
    seq.push_back(r);
  }
  auto variations = [&](const Rational& x) {
    int v = 0, last = 0;
    for (const auto& p : seq) {
      int s = sign_at(p, x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  };
  return variations(lo) - variations(hi);
}

bool proven_irreducible_over_q(const std::vector<Integer>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  std::bitset<256> possible;
  possible.set();
  int used = 0;
  for (int64_t p = 3; p < 2000 && used < 40; p += 2) {
    bool prime = true;
    for (int64_t q = 3; q * q <= p; q += 2)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    PolyP f;
    for (const auto& c : coeffs) f.push_back(static_cast<int64_t>(Integer(((c % p) + p) % p)));
    if (f.back() == 0) continue;
    PolyP df;
    for (int k = 1; k <= n; ++k) df.push_back(f[k] * k % p);
    trim_p(df);
    if (gcd_p(f, df, p).size() != 1) continue;  // not squarefree mod p
    ++used;
    std::bitset<256> sums;
    sums.set(0);
    for (int d : factor_degrees(f, p)) sums |= sums << d;
    possible &= sums;
    bool only_trivial = true;
    for (int d = 1; d < n; ++d)
      if (possible.test(d)) only_trivial = false;
    if (only_trivial) return true;
  }
  // Even polynomial q(t^2): irreducible when q is and the root s of q is not a
  // square in Q(s). A root r of q modulo a prime where q is squarefree that is
  // a quadratic non-residue rules out s = w^2.
  bool even = n % 2 == 0;
  for (int k = 1; k <= n; k += 2)
    if (coeffs[k] != 0) even = false;
  if (!even) return false;
  std::vector<Integer> q;
  for (int k = 0; k <= n; k += 2) q.push_back(coeffs[k]);
  if (!proven_irreducible_over_q(q)) return false;
  const int m = n / 2;
  for (int64_t p = 3; p < 2000; p += 2) {
    bool prime = true;
    for (int64_t d = 3; d * d <= p; d += 2)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    PolyP f;
    for (const auto& c : q) f.push_back(static_cast<int64_t>(Integer(((c % p) + p) % p)));
    if (f.back() == 0) continue;
    PolyP df;
    for (int k = 1; k <= m; ++k) df.push_back(f[k] * k % p);
    trim_p(df);
    if (gcd_p(f, df, p).size() != 1) continue;
    for (int64_t r = 1; r < p; ++r) {
      int64_t acc = 0;
      for (int k = m; k >= 0; --k) acc = (acc * r + f[k]) % p;
      if (acc == 0 && pow_mod(r, (p - 1) / 2, p) == p - 1) return true;
    }
  }
  return false;
}

}  // namespace coxdef
