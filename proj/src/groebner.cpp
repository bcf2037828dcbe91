#include "coxdef/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "coxdef/error.hpp"

namespace coxdef {

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& t : terms) {
    int s = 0;
    for (auto e : t.exp) s += e;
    d = std::max(d, s);
  }
  return d;
}

PolyRing::PolyRing(std::shared_ptr<const Field> field, std::vector<std::string> vars)
    : field_(std::move(field)), vars_(std::move(vars)) {
  if (static_cast<int>(vars_.size()) > kMaxVars) throw Error(ErrorKind::Precondition, "too many variables");
}

int PolyRing::var_index(const std::string& name) const {
  for (int i = 0; i < num_vars(); ++i)
    if (vars_[i] == name) return i;
  return -1;
}

bool PolyRing::less(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}
bool PolyRing::divides(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}
Monomial PolyRing::lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m[i] = std::max(a[i], b[i]);
  return m;
}
Monomial PolyRing::quotient(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m[i] = a[i] - b[i];
  return m;
}
Monomial PolyRing::product(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m[i] = a[i] + b[i];
  return m;
}
bool PolyRing::coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] && b[i]) return false;
  return true;
}

MultiPoly PolyRing::constant(const FieldElem& c) const {
  MultiPoly p;
  if (!field_->is_zero(c)) p.terms.push_back({Monomial{}, c});
  return p;
}

MultiPoly PolyRing::var(int i) const {
  MultiPoly p;
  Term t{Monomial{}, field_->one()};
  t.exp[i] = 1;
  p.terms.push_back(t);
  return p;
}

MultiPoly PolyRing::var(const std::string& name) const {
  int i = var_index(name);
  if (i < 0) throw Error(ErrorKind::UnknownName, "variable " + name);
  return var(i);
}

MultiPoly PolyRing::sub_mul(const MultiPoly& a, const FieldElem& c, const Monomial& m, const MultiPoly& b) const {
  MultiPoly out;
  out.terms.reserve(a.terms.size() + b.terms.size());
  size_t i = 0, j = 0;
  const Field& F = *field_;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size()) {
      out.terms.push_back(a.terms[i++]);
      continue;
    }
    Monomial bm = product(b.terms[j].exp, m);
    if (i == a.terms.size() || less(a.terms[i].exp, bm)) {
      out.terms.push_back({bm, F.neg(F.mul(c, b.terms[j].coef))});
      ++j;
    } else if (less(bm, a.terms[i].exp)) {
      out.terms.push_back(a.terms[i++]);
    } else {
      FieldElem v = F.sub(a.terms[i].coef, F.mul(c, b.terms[j].coef));
      if (!F.is_zero(v)) out.terms.push_back({bm, v});
      ++i;
      ++j;
    }
  }
  return out;
}

MultiPoly PolyRing::add(const MultiPoly& a, const MultiPoly& b) const {
  return sub_mul(a, field_->from_rational(-1), Monomial{}, b);
}
MultiPoly PolyRing::sub(const MultiPoly& a, const MultiPoly& b) const { return sub_mul(a, field_->one(), Monomial{}, b); }

MultiPoly PolyRing::mul(const MultiPoly& a, const MultiPoly& b) const {
  MultiPoly out;
  for (const auto& t : a.terms) out = sub_mul(out, field_->neg(t.coef), t.exp, b);
  return out;
}

MultiPoly PolyRing::scale(const MultiPoly& a, const FieldElem& c) const {
  if (field_->is_zero(c)) return {};
  MultiPoly out = a;
  for (auto& t : out.terms) t.coef = field_->mul(t.coef, c);
  return out;
}

MultiPoly PolyRing::monic(const MultiPoly& a) const {
  if (a.is_zero() || field_->is_one(a.lead().coef)) return a;
  return scale(a, field_->inv(a.lead().coef));
}

FieldElem PolyRing::linear_coefficient(const MultiPoly& a, int var) const {
  for (const auto& t : a.terms) {
    int deg = 0;
    for (auto e : t.exp) deg += e;
    if (deg == 1 && t.exp[var] == 1) return t.coef;
  }
  return field_->zero();
}

FieldElem PolyRing::constant_term(const MultiPoly& a) const {
  if (!a.is_zero() && a.terms.back().exp == Monomial{}) return a.terms.back().coef;
  return field_->zero();
}

std::vector<int> PolyRing::variables_of(const MultiPoly& a) const {
  std::vector<int> out;
  for (int i = 0; i < num_vars(); ++i)
    for (const auto& t : a.terms)
      if (t.exp[i]) {
        out.push_back(i);
        break;
      }
  return out;
}

double PolyRing::evaluate(const MultiPoly& a, const std::vector<double>& x) const {
  double s = 0;
  for (const auto& t : a.terms) {
    double v = field_->to_double(t.coef);
    for (int i = 0; i < num_vars(); ++i)
      for (int e = 0; e < t.exp[i]; ++e) v *= x[i];
    s += v;
  }
  return s;
}

std::string PolyRing::monomial_string(const Monomial& m) const {
  std::string s;
  for (int i = 0; i < num_vars(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += "*";
    s += vars_[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string PolyRing::to_string(const MultiPoly& a) const {
  if (a.is_zero()) return "0";
  std::string s;
  for (size_t k = 0; k < a.terms.size(); ++k) {
    const auto& t = a.terms[k];
    std::string c = field_->to_string(t.coef);
    std::string m = monomial_string(t.exp);
    bool simple = field_->is_rational(t.coef) || c.find(' ') == std::string::npos;
    if (!simple) c = "(" + c + ")";
    std::string piece;
    if (m == "1") piece = c;
    else if (c == "1") piece = m;
    else if (c == "-1") piece = "-" + m;
    else piece = c + "*" + m;
    if (k > 0) s += piece[0] == '-' ? " - " + piece.substr(1) : " + " + piece;
    else s += piece;
  }
  return s;
}

namespace {

size_t term_count(const std::vector<MultiPoly>& G) {
  size_t n = 0;
  for (const auto& g : G) n += g.terms.size();
  return n;
}

MultiPoly reduce_budget(const PolyRing& R, const MultiPoly& f, const std::vector<MultiPoly>& G, size_t budget) {
  MultiPoly p = f, r;
  while (!p.is_zero()) {
    const Term& t = p.lead();
    const MultiPoly* div = nullptr;
    for (const auto& g : G)
      if (!g.is_zero() && PolyRing::divides(g.lead().exp, t.exp)) {
        div = &g;
        break;
      }
    if (div) {
      FieldElem c = R.field().div(t.coef, div->lead().coef);
      p = R.sub_mul(p, c, PolyRing::quotient(t.exp, div->lead().exp), *div);
    } else {
      r.terms.push_back(t);
      p.terms.erase(p.terms.begin());
    }
    if (p.terms.size() + r.terms.size() > budget)
      throw Error(ErrorKind::ResourceExceeded, "polynomial exceeds the term budget during reduction");
  }
  return r;
}

}  // namespace

MultiPoly reduce(const PolyRing& R, const MultiPoly& f, const std::vector<MultiPoly>& G) {
  return reduce_budget(R, f, G, static_cast<size_t>(-1));
}

MultiPoly s_polynomial(const PolyRing& R, const MultiPoly& f, const MultiPoly& g) {
  Monomial l = PolyRing::lcm(f.lead().exp, g.lead().exp);
  const Field& F = R.field();
  MultiPoly a = R.sub_mul(MultiPoly{}, F.neg(F.inv(f.lead().coef)), PolyRing::quotient(l, f.lead().exp), f);
  return R.sub_mul(a, F.inv(g.lead().coef), PolyRing::quotient(l, g.lead().exp), g);
}

GroebnerBasis buchberger(const PolyRing& R, const std::vector<MultiPoly>& generators, const GroebnerOptions& opt) {
  GroebnerBasis out;
  out.variable_order = R.vars();
  std::vector<MultiPoly> G;
  for (const auto& g : generators)
    if (!g.is_zero()) G.push_back(R.monic(g));
  std::set<std::pair<int, int>> B;
  for (int j = 0; j < static_cast<int>(G.size()); ++j)
    for (int i = 0; i < j; ++i) B.insert({i, j});
  auto in_B = [&](int a, int b) { return B.count({std::min(a, b), std::max(a, b)}) > 0; };
  while (!B.empty()) {
    // Normal strategy: smallest lcm first.
    auto best = B.begin();
    Monomial best_l = PolyRing::lcm(G[best->first].lead().exp, G[best->second].lead().exp);
    for (auto it = std::next(B.begin()); it != B.end(); ++it) {
      Monomial l = PolyRing::lcm(G[it->first].lead().exp, G[it->second].lead().exp);
      if (PolyRing::less(l, best_l)) {
        best = it;
        best_l = l;
      }
    }
    auto [i, j] = *best;
    B.erase(best);
    ++out.pairs_considered;
    if (PolyRing::coprime(G[i].lead().exp, G[j].lead().exp)) {
      ++out.pairs_skipped;
      continue;
    }
    bool chain = false;
    for (int k = 0; k < static_cast<int>(G.size()) && !chain; ++k)
      if (k != i && k != j && PolyRing::divides(G[k].lead().exp, best_l) && !in_B(i, k) && !in_B(j, k))
        chain = true;
    if (chain) {
      ++out.pairs_skipped;
      continue;
    }
    ++out.pairs_reduced;
    size_t held = term_count(G);
    if (held > opt.term_budget) throw Error(ErrorKind::ResourceExceeded, "basis exceeds the term budget");
    MultiPoly s = reduce_budget(R, s_polynomial(R, G[i], G[j]), G, opt.term_budget - held);
    if (s.is_zero()) continue;
    G.push_back(R.monic(s));
    int n = static_cast<int>(G.size()) - 1;
    for (int k = 0; k < n; ++k) B.insert({k, n});
  }
  // Minimal, then reduced.
  std::vector<MultiPoly> M;
  for (size_t a = 0; a < G.size(); ++a) {
    bool drop = false;
    for (size_t b = 0; b < G.size() && !drop; ++b) {
      if (a == b) continue;
      if (PolyRing::divides(G[b].lead().exp, G[a].lead().exp) &&
          (G[b].lead().exp != G[a].lead().exp || b < a))
        drop = true;
    }
    if (!drop) M.push_back(G[a]);
  }
  for (size_t a = 0; a < M.size(); ++a) {
    std::vector<MultiPoly> others;
    for (size_t b = 0; b < M.size(); ++b)
      if (b != a) others.push_back(M[b]);
    MultiPoly tail = M[a];
    Term lead = tail.terms.front();
    tail.terms.erase(tail.terms.begin());
    MultiPoly red = reduce_budget(R, tail, others, opt.term_budget);
    red.terms.insert(red.terms.begin(), lead);
    M[a] = R.monic(red);
  }
  std::sort(M.begin(), M.end(), [](const MultiPoly& a, const MultiPoly& b) {
    return PolyRing::less(a.lead().exp, b.lead().exp);
  });
  out.generators = std::move(M);
  return out;
}

bool is_groebner(const PolyRing& R, const std::vector<MultiPoly>& G) {
  for (size_t i = 0; i < G.size(); ++i)
    for (size_t j = i + 1; j < G.size(); ++j)
      if (!reduce(R, s_polynomial(R, G[i], G[j]), G).is_zero()) return false;
  return true;
}

std::optional<MultiPoly> square_root(const PolyRing& R, const MultiPoly& f) {
  if (f.is_zero() || f.total_degree() < 2) return std::nullopt;
  const Field& F = R.field();
  MultiPoly g = R.monic(f);
  Monomial h0 = g.lead().exp;
  for (auto& e : h0) {
    if (e % 2) return std::nullopt;
    e /= 2;
  }
  MultiPoly h;
  h.terms.push_back({h0, F.one()});
  const FieldElem half = F.from_rational(Rational(1, 2));
  for (size_t it = 0; it <= g.terms.size() + 1; ++it) {
    MultiPoly r = R.sub(g, R.mul(h, h));
    if (r.is_zero()) return h;
    const Term& t = r.lead();
    if (!PolyRing::divides(h0, t.exp)) return std::nullopt;
    Monomial q = PolyRing::quotient(t.exp, h0);
    if (!PolyRing::less(q, h0)) return std::nullopt;
    h.terms.push_back({q, F.mul(half, t.coef)});
    std::sort(h.terms.begin(), h.terms.end(),
              [](const Term& a, const Term& b) { return PolyRing::less(b.exp, a.exp); });
  }
  return std::nullopt;
}

std::vector<MultiPoly> radical_step(const PolyRing& R, const std::vector<MultiPoly>& generators, bool* changed) {
  std::vector<MultiPoly> out;
  bool any = false;
  for (const auto& g : generators) {
    auto h = square_root(R, g);
    if (h) {
      out.push_back(R.monic(*h));
      any = true;
    } else {
      out.push_back(g);
    }
  }
  if (changed) *changed = any;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Row echelon bookkeeping over the field for the greedy selection.
struct Echelon {
  const Field& F;
  std::vector<std::vector<FieldElem>> rows;
  std::vector<int> pivots;

  // Returns the pivot column if v is independent of the stored rows.
  int insert(std::vector<FieldElem> v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      const FieldElem& c = v[pivots[r]];
      if (F.is_zero(c)) continue;
      for (size_t k = 0; k < v.size(); ++k) v[k] = F.sub(v[k], F.mul(c, rows[r][k]));
    }
    for (size_t k = 0; k < v.size(); ++k) {
      if (F.is_zero(v[k])) continue;
      FieldElem inv = F.inv(v[k]);
      for (auto& x : v) x = F.mul(x, inv);
      for (size_t r = 0; r < rows.size(); ++r) {
        const FieldElem c = rows[r][k];
        if (F.is_zero(c)) continue;
        for (size_t q = 0; q < v.size(); ++q) rows[r][q] = F.sub(rows[r][q], F.mul(c, v[q]));
      }
      rows.push_back(v);
      pivots.push_back(static_cast<int>(k));
      return static_cast<int>(k);
    }
    return -1;
  }
};

}  // namespace

BasisAnalysis analyze_basis(const PolyRing& R, const std::vector<MultiPoly>& basis,
                            const std::vector<SyzygySpec>& syzygies) {
  const Field& F = R.field();
  const int n = R.num_vars();
  BasisAnalysis out;
  for (const auto& g : basis) {
    if (!F.is_zero(R.constant_term(g)))
      throw Error(ErrorKind::NonTriangular, "the origin is not a solution: " + R.to_string(g));
  }
  for (int v = 0; v < n; ++v)
    for (const auto& g : basis) {
      Monomial m{};
      m[v] = 1;
      if (g.lead().exp == m) {
        out.leading_vars.push_back(v);
        break;
      }
    }
  // Independent set modulo the leading monomials, smallest variables first.
  std::vector<bool> in_set(n, false);
  for (int v = n - 1; v >= 0; --v) {
    in_set[v] = true;
    bool ok = true;
    for (const auto& g : basis) {
      bool inside = true;
      for (int u = 0; u < n; ++u)
        if (g.lead().exp[u] && !in_set[u]) inside = false;
      if (inside) ok = false;
    }
    if (!ok) in_set[v] = false;
  }
  for (int v = 0; v < n; ++v)
    if (in_set[v]) out.free_vars.push_back(v);
  for (size_t k = 0; k < basis.size(); ++k)
    if (basis[k].total_degree() >= 2) out.nonlinear.push_back(static_cast<int>(k));

  auto nl = [&](int idx) -> const MultiPoly& {
    if (idx < 0 || idx >= static_cast<int>(out.nonlinear.size()))
      throw Error(ErrorKind::NonTriangular, "syzygy refers to a missing generator");
    return basis[out.nonlinear[idx]];
  };
  // Verify syzygies; targets are single generators on one side.
  std::set<int> targets;
  std::vector<std::pair<int, const SyzygySpec*>> target_of;
  for (const auto& s : syzygies) {
    MultiPoly acc;
    for (const auto& [m, idx] : s.lhs) acc = R.add(acc, R.mul(m, nl(idx)));
    for (const auto& [m, idx] : s.rhs) acc = R.sub(acc, R.mul(m, nl(idx)));
    if (!acc.is_zero()) throw Error(ErrorKind::NonTriangular, "syzygy does not hold: " + s.text);
    out.syzygies_verified.push_back(s.text);
    if (s.lhs.size() == 1) {
      targets.insert(out.nonlinear[s.lhs[0].second]);
      target_of.push_back({out.nonlinear[s.lhs[0].second], &s});
    }
  }

  std::vector<int> dep;
  std::vector<int> col(n, -1);
  for (int v = 0; v < n; ++v)
    if (!in_set[v]) {
      col[v] = static_cast<int>(dep.size());
      dep.push_back(v);
    }
  auto dep_row = [&](const MultiPoly& g) {
    std::vector<FieldElem> row;
    for (int v : dep) row.push_back(R.linear_coefficient(g, v));
    return row;
  };
  Echelon E{F, {}, {}};
  std::vector<int> pivot_of_selected;
  auto try_select = [&](int k) {
    int p = E.insert(dep_row(basis[k]));
    if (p < 0) return;
    out.solving.push_back(k);
    pivot_of_selected.push_back(dep[p]);
  };
  for (size_t k = 0; k < basis.size(); ++k)
    if (!targets.count(static_cast<int>(k))) try_select(static_cast<int>(k));
  for (int k : targets)
    if (E.rows.size() < dep.size()) try_select(k);
  if (E.rows.size() < dep.size())
    throw Error(ErrorKind::NonTriangular, "linear part does not determine the dependent variables");

  // Tangent of the solution manifold of the selected generators: solve for
  // the dependent differentials in terms of each free direction.
  auto tangent_along = [&](int free_var) {
    std::vector<FieldElem> t(n, F.zero());
    t[free_var] = F.one();
    // Full elimination of the selected rows already has unit pivots; each
    // selected row g gives pivot + sum(other dep) = -(coefficient of free var).
    // Solve by back substitution through the echelon rows recomputed with the
    // free column appended.
    const size_t m = dep.size();
    std::vector<std::vector<FieldElem>> A;
    for (int k : out.solving) {
      auto row = dep_row(basis[k]);
      row.push_back(F.neg(R.linear_coefficient(basis[k], free_var)));
      A.push_back(row);
    }
    for (size_t c = 0; c < m; ++c) {
      size_t piv = c;
      while (piv < A.size() && F.is_zero(A[piv][c])) ++piv;
      std::swap(A[c], A[piv]);
      FieldElem inv = F.inv(A[c][c]);
      for (auto& x : A[c]) x = F.mul(x, inv);
      for (size_t r = 0; r < A.size(); ++r) {
        if (r == c || F.is_zero(A[r][c])) continue;
        FieldElem f = A[r][c];
        for (size_t q = 0; q <= m; ++q) A[r][q] = F.sub(A[r][q], F.mul(f, A[c][q]));
      }
    }
    for (size_t c = 0; c < m; ++c) t[dep[c]] = A[c][m];
    return t;
  };

  std::set<int> selected(out.solving.begin(), out.solving.end());
  for (size_t k = 0; k < basis.size(); ++k) {
    if (selected.count(static_cast<int>(k))) continue;
    const SyzygySpec* spec = nullptr;
    for (const auto& [idx, s] : target_of)
      if (idx == static_cast<int>(k)) spec = s;
    if (!spec) throw Error(ErrorKind::NonTriangular, "generator not certified redundant: " + R.to_string(basis[k]));
    for (const auto& [m, idx] : spec->rhs)
      if (!selected.count(out.nonlinear[idx]))
        throw Error(ErrorKind::NonTriangular, "syzygy uses an unselected generator: " + spec->text);
    // The multiplier must not vanish identically on the solution manifold.
    const MultiPoly& mult = spec->lhs[0].first;
    bool nonvanishing = !F.is_zero(R.constant_term(mult));
    for (int fv : out.free_vars) {
      if (nonvanishing) break;
      auto t = tangent_along(fv);
      FieldElem d = F.zero();
      for (int v = 0; v < n; ++v) d = F.add(d, F.mul(R.linear_coefficient(mult, v), t[v]));
      if (!F.is_zero(d)) nonvanishing = true;
    }
    if (!nonvanishing) throw Error(ErrorKind::NonTriangular, "syzygy multiplier may vanish on the solution set");
    out.redundant.push_back(static_cast<int>(k));
  }
  for (size_t s = 0; s < out.solving.size(); ++s) {
    const MultiPoly& g = basis[out.solving[s]];
    int x = pivot_of_selected[s];
    std::vector<std::string> others;
    for (int v : R.variables_of(g))
      if (v != x) others.push_back(R.vars()[v]);
    std::string c = R.vars()[x] + " <- ";
    if (others.empty()) c += "0";
    for (size_t q = 0; q < others.size(); ++q) c += (q ? ", " : "") + others[q];
    out.chains.push_back(c);
  }
  out.local_dimension = static_cast<int>(out.free_vars.size());
  return out;
}

std::string basis_text(const PolyRing& R, const GroebnerBasis& G) {
  std::ostringstream os;
  os << "# field: " << R.field().describe() << "\n# lex order:";
  for (const auto& v : G.variable_order) os << " " << v;
  os << "\n";
  for (const auto& g : G.generators) os << R.to_string(g) << "\n";
  return os.str();
}

}  // namespace coxdef
