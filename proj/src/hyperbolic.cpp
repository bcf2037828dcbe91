#include "coxdef/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "coxdef/error.hpp"
#include "coxdef/linalg.hpp"
#include "formulas.hpp"

namespace coxdef {

namespace {

const Eigen::Vector4d kJ(-1, 1, 1, 1);

Eigen::Vector4d to_eigen(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
Vec4 to_vec(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }

Vec4 jv(const Vec4& v) { return {-v[0], v[1], v[2], v[3]}; }

double max_abs(const Eigen::VectorXd& r) { return r.size() ? r.cwiseAbs().maxCoeff() : 0.0; }

// Damped Gauss-Newton with minimum-norm steps; pinned faces stay fixed.
double newton(const Polyhedron& P, const std::vector<double>& tg, std::vector<Vec4>& X,
              const std::vector<char>& pinned, int max_iter) {
  const int f = P.num_faces();
  std::vector<int> col(f, -1);
  int nfree = 0;
  for (int i = 0; i < f; ++i)
    if (!pinned[i]) col[i] = nfree++;
  if (nfree == 0) return max_abs(hyperbolic_residuals(P, tg, X));
  std::vector<int> rows;  // equation indices touching a free face
  for (int i = 0; i < f; ++i)
    if (!pinned[i]) rows.push_back(i);
  for (int e = 0; e < P.num_edges(); ++e)
    if (!pinned[P.edges[e][0]] || !pinned[P.edges[e][1]]) rows.push_back(f + e);

  auto restricted = [&](const std::vector<Vec4>& Y) {
    Eigen::VectorXd full = hyperbolic_residuals(P, tg, Y);
    Eigen::VectorXd r(rows.size());
    for (size_t k = 0; k < rows.size(); ++k) r(k) = full(rows[k]);
    return r;
  };
  Eigen::VectorXd r = restricted(X);
  double res = max_abs(r);
  int stall = 0;
  for (int it = 0; it < max_iter && res > 1e-15; ++it) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(rows.size(), 4 * nfree);
    for (size_t k = 0; k < rows.size(); ++k) {
      int q = rows[k];
      if (q < f) {
        Vec4 a = jv(X[q]);
        for (int c = 0; c < 4; ++c) M(k, 4 * col[q] + c) = 2 * a[c];
      } else {
        auto [i, j] = P.edges[q - f];
        Vec4 ai = jv(X[i]), aj = jv(X[j]);
        for (int c = 0; c < 4; ++c) {
          if (col[i] >= 0) M(k, 4 * col[i] + c) = aj[c];
          if (col[j] >= 0) M(k, 4 * col[j] + c) = ai[c];
        }
      }
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(M);
    Eigen::VectorXd dx = cod.solve(r);
    double step = 1;
    bool accepted = false;
    for (int h = 0; h < 12; ++h, step /= 2) {
      std::vector<Vec4> Y = X;
      for (int i = 0; i < f; ++i)
        if (col[i] >= 0)
          for (int c = 0; c < 4; ++c) Y[i][c] -= step * dx(4 * col[i] + c);
      Eigen::VectorXd r2 = restricted(Y);
      double res2 = max_abs(r2);
      if (res2 < res || (h == 0 && res2 < 1e-13)) {
        stall = res2 > 0.5 * res ? stall + 1 : 0;
        X = std::move(Y);
        r = r2;
        res = res2;
        accepted = true;
        break;
      }
    }
    if (!accepted || stall >= 3) break;
  }
  return max_abs(hyperbolic_residuals(P, tg, X));
}

std::vector<double> targets_from_angles(const std::vector<double>& th) {
  std::vector<double> t(th.size());
  for (size_t k = 0; k < th.size(); ++k) t[k] = -std::cos(th[k]);
  return t;
}

Vec4 combine(const std::vector<Vec4>& X, const std::vector<std::pair<int, double>>& src) {
  Vec4 v{0, 0, 0, 0};
  for (auto [face, w] : src)
    for (int c = 0; c < 4; ++c) v[c] += w * X[face][c];
  double n = std::sqrt(std::abs(lorentz_product(v, v)));
  if (n == 0) throw Error(ErrorKind::Precondition, "degenerate frame vector");
  for (auto& x : v) x /= n;
  return v;
}

// Unit future timelike vector orthogonal to three spacelike vectors.
Eigen::Vector4d timelike_completion(const std::array<Vec4, 3>& v) {
  Eigen::Matrix<double, 3, 4> A;
  for (int r = 0; r < 3; ++r) A.row(r) = (kJ.cwiseProduct(to_eigen(v[r]))).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  Eigen::Vector4d w = svd.matrixV().col(3);
  double q = lorentz_product(to_vec(w), to_vec(w));
  if (q >= 0) throw Error(ErrorKind::Precondition, "frame vectors do not span a spacelike 3-space");
  w /= std::sqrt(-q);
  if (w(0) < 0) w = -w;
  return w;
}

std::vector<Vec4> transform_all(const Eigen::Matrix4d& g, const std::vector<Vec4>& X) {
  std::vector<Vec4> out;
  for (const auto& v : X) out.push_back(to_vec(g * to_eigen(v)));
  return out;
}

// Faces of a vertex sorted by (order pattern) for the standard placement.
struct VertexChoice {
  std::vector<int> faces;  // placement order
  AnchorKind kind;
};

std::optional<VertexChoice> standard_vertex(const Polyhedron& P, const Labeling& L, const std::vector<int>& vx) {
  if (vx.size() != 3) return std::nullopt;
  int a = vx[0], b = vx[1], c = vx[2];
  int eab = P.edge(a, b), ebc = P.edge(b, c), eca = P.edge(c, a);
  int twos = (L[eab] == 2) + (L[ebc] == 2) + (L[eca] == 2);
  if (twos == 3) {
    std::vector<int> fs{a, b, c};
    std::sort(fs.begin(), fs.end());
    return VertexChoice{fs, AnchorKind::Standard222};
  }
  if (twos == 2) {
    // The odd edge carries order 3 in the standard frame.
    int odd = L[eab] != 2 ? eab : L[ebc] != 2 ? ebc : eca;
    if (L[odd] != 3) return std::nullopt;
    auto [p, q] = P.edges[odd];
    int apex = a + b + c - p - q;
    return VertexChoice{{apex, std::min(p, q), std::max(p, q)}, AnchorKind::Standard223};
  }
  return std::nullopt;
}

Seed make_standard(const VertexChoice& vc) {
  Seed s;
  s.kind = vc.kind;
  auto t = formulas::standard_targets<double>(vc.kind == AnchorKind::Standard223);
  for (int k = 0; k < 3; ++k) {
    s.sources.push_back({{vc.faces[k], 1.0}});
    s.targets.push_back(t[k]);
  }
  return s;
}

// Prism (including cube) with symmetric angles: closed form.
std::vector<Vec4> symmetric_prism(const Polyhedron& P, const PrismShape& S, double side_angle, double cap_angle) {
  const int n = static_cast<int>(S.sides.size());
  const double c = std::cos(2 * M_PI / n);
  double x = std::sqrt((std::cos(side_angle) + c) / (1 - c));
  double r = std::sqrt(1 + x * x);
  double y = std::cos(cap_angle) / x, z = std::sqrt(1 + y * y);
  std::vector<Vec4> X(P.num_faces());
  for (int k = 0; k < n; ++k) X[S.sides[k]] = {x, r * std::cos(2 * M_PI * k / n), r * std::sin(2 * M_PI * k / n), 0};
  X[S.top] = {y, 0, 0, z};
  X[S.bottom] = {y, 0, 0, -z};
  return X;
}

std::vector<double> angles_of(const Labeling& L) {
  std::vector<double> th(L.size());
  for (size_t k = 0; k < L.size(); ++k) th[k] = M_PI / L[k];
  return th;
}

// Track the solution from base angles to target angles; each step is
// halved on failure.
std::vector<Vec4> track_angles(const Polyhedron& P, std::vector<Vec4> X, const std::vector<double>& th0,
                               const std::vector<double>& th1, int steps, const SolveOptions& opt) {
  const std::vector<char> none(P.num_faces(), 0);
  double t = 0, dt = 1.0 / std::max(steps, 1);
  int halvings = 0;
  while (t < 1) {
    double t1 = std::min(1.0, t + dt);
    std::vector<double> th(th0.size());
    for (size_t k = 0; k < th.size(); ++k) th[k] = (1 - t1) * th0[k] + t1 * th1[k];
    std::vector<Vec4> Y = X;
    double res = newton(P, targets_from_angles(th), Y, none, opt.max_iter);
    if (res <= opt.tol) {
      X = std::move(Y);
      t = t1;
      continue;
    }
    if (++halvings > 30) throw Error(ErrorKind::PathFailure, "continuation step size underflow");
    dt /= 2;
  }
  return X;
}

// Random restarts for polyhedra without a known base shape.
std::vector<Vec4> random_solve(const Polyhedron& P, const Labeling& L, const SolveOptions& opt) {
  std::mt19937 rng(opt.rng_seed);
  std::normal_distribution<double> nd;
  const std::vector<char> none(P.num_faces(), 0);
  auto tg = edge_targets(L);
  for (int attempt = 0; attempt < opt.random_restarts; ++attempt) {
    std::vector<Vec4> X(P.num_faces());
    for (auto& v : X) {
      Eigen::Vector3d d(nd(rng), nd(rng), nd(rng));
      d.normalize();
      double a = 0.5 + std::abs(nd(rng));
      double b = std::sqrt(1 + a * a);
      v = {a, b * d(0), b * d(1), b * d(2)};
    }
    if (newton(P, tg, X, none, 4 * opt.max_iter) > opt.tol) continue;
    HyperbolicRealization R;
    R.normals = X;
    R.orders = L;
    R.gram = gram_matrix(X);
    if (validate_gram(P, R).valid) return X;
  }
  throw Error(ErrorKind::NoConvergence, "no valid realization found from random starts");
}

// Ungauged realization of P with orders L.
std::vector<Vec4> base_solution(const Polyhedron& P, const Labeling& L, const SolveOptions& opt) {
  if (P.num_faces() == 12 && P.num_edges() == 30) {
    if (auto m = isomorphism(P, dodecahedron())) {
      auto D = dodecahedron();
      auto ref = do13_realization();
      std::vector<Vec4> X(P.num_faces());
      for (int i = 0; i < P.num_faces(); ++i) X[i] = ref.normals[(*m)[i]];
      Labeling L0(P.num_edges());
      for (int e = 0; e < P.num_edges(); ++e) L0[e] = ref.orders[D.edge((*m)[P.edges[e][0]], (*m)[P.edges[e][1]])];
      return track_angles(P, X, angles_of(L0), angles_of(L), opt.steps, opt);
    }
  }
  if (auto S = prism_shape(P)) {
    const int n = static_cast<int>(S->sides.size());
    double side = n == 3 ? M_PI / 4 : M_PI / 3;
    double cap = n == 3 ? 3 * M_PI / 8 : M_PI / 3;
    auto X = symmetric_prism(P, *S, side, cap);
    std::vector<double> th0(P.num_edges());
    for (int e = 0; e < P.num_edges(); ++e) {
      auto [i, j] = P.edges[e];
      bool capped = i == S->top || i == S->bottom || j == S->top || j == S->bottom;
      th0[e] = capped ? cap : side;
    }
    return track_angles(P, X, th0, angles_of(L), opt.steps, opt);
  }
  return random_solve(P, L, opt);
}

}  // namespace

double lorentz_product(const Vec4& x, const Vec4& y) {
  return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

const char* anchor_name(AnchorKind k) {
  switch (k) {
    case AnchorKind::None: return "none";
    case AnchorKind::Standard223: return "standard-223";
    case AnchorKind::Standard222: return "standard-222";
    case AnchorKind::Do13Frame: return "do13-frame";
    case AnchorKind::Custom: return "custom";
  }
  return "?";
}

std::vector<int> Seed::pinned_faces() const {
  std::vector<int> out;
  for (const auto& s : sources)
    if (s.size() == 1) out.push_back(s[0].first);
  return out;
}

std::vector<double> edge_targets(const Labeling& L) {
  std::vector<double> t(L.size());
  for (size_t k = 0; k < L.size(); ++k) t[k] = -std::cos(M_PI / L[k]);
  return t;
}

Eigen::VectorXd hyperbolic_residuals(const Polyhedron& P, const std::vector<double>& targets,
                                     const std::vector<Vec4>& X) {
  const int f = P.num_faces(), e = P.num_edges();
  Eigen::VectorXd r(f + e);
  for (int i = 0; i < f; ++i) r(i) = lorentz_product(X[i], X[i]) - 1;
  for (int k = 0; k < e; ++k) r(f + k) = lorentz_product(X[P.edges[k][0]], X[P.edges[k][1]]) - targets[k];
  return r;
}

Eigen::MatrixXd gram_matrix(const std::vector<Vec4>& X) {
  const int f = static_cast<int>(X.size());
  Eigen::MatrixXd G(f, f);
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) G(i, j) = lorentz_product(X[i], X[j]);
  return G;
}

Seed seed_at_vertex(const Polyhedron& P, const Labeling& L, std::vector<int> faces) {
  std::sort(faces.begin(), faces.end());
  for (const auto& vx : P.vertices) {
    std::vector<int> s = vx;
    std::sort(s.begin(), s.end());
    if (s != faces) continue;
    auto vc = standard_vertex(P, L, vx);
    if (!vc) throw Error(ErrorKind::NoStandardVertex, "vertex orders are not (2,2,2) or (2,2,3)");
    return make_standard(*vc);
  }
  throw Error(ErrorKind::Precondition, "faces do not form a vertex");
}

Seed seed_standard(const Polyhedron& P, const Labeling& L) {
  // Prefer (2,2,2) vertices; ties go to the smallest sorted edge list.
  std::optional<VertexChoice> best;
  std::vector<int> best_edges;
  for (int vi = 0; vi < P.num_vertices(); ++vi) {
    auto vc = standard_vertex(P, L, P.vertices[vi]);
    if (!vc) continue;
    auto es = P.vertex_edges[vi];
    std::sort(es.begin(), es.end());
    bool better = !best || (vc->kind == AnchorKind::Standard222 && best->kind != AnchorKind::Standard222) ||
                  (vc->kind == best->kind && es < best_edges);
    if (better) {
      best = vc;
      best_edges = es;
    }
  }
  if (!best) throw Error(ErrorKind::NoStandardVertex, "no vertex with orders (2,2,2) or (2,2,3)");
  return make_standard(*best);
}

std::optional<Seed> seed_do13_frame(const Polyhedron& P, const Labeling& L) {
  if (P.num_faces() != 12 || P.num_edges() != 30 || !isomorphism(P, dodecahedron())) return std::nullopt;
  // Faces 0, 1, 2 of the catalog numbering: orders (0-1, 1-2, 0-2) = (3, 2, 3).
  int e01 = P.edge(0, 1), e12 = P.edge(1, 2), e02 = P.edge(0, 2);
  if (e01 < 0 || e12 < 0 || e02 < 0) return std::nullopt;
  if (L[e01] != 3 || L[e12] != 2 || L[e02] != 3) return std::nullopt;
  Seed s;
  s.kind = AnchorKind::Do13Frame;
  auto t = formulas::do13_frame_targets<double>();
  for (int k = 0; k < 3; ++k) {
    s.sources.push_back({{k, 1.0}});
    s.targets.push_back(t[k]);
  }
  return s;
}

std::vector<Seed> do13_frame_seeds(const Polyhedron& P, const Labeling& L) {
  std::vector<Seed> out;
  if (P.num_faces() != 12 || P.num_edges() != 30 || !isomorphism(P, dodecahedron())) return out;
  auto t = formulas::do13_frame_targets<double>();
  for (int vi = 0; vi < P.num_vertices(); ++vi) {
    int two = -1, n2 = 0, n3 = 0;
    for (int e : P.vertex_edges[vi]) {
      if (L[e] == 2) two = e, ++n2;
      if (L[e] == 3) ++n3;
    }
    if (n2 != 1 || n3 != 2) continue;
    auto [b, c] = P.edges[two];
    int a = -1;
    for (int f : P.vertices[vi])
      if (f != b && f != c) a = f;
    Seed s;
    s.kind = AnchorKind::Do13Frame;
    int faces[3] = {a, b, c};
    for (int k = 0; k < 3; ++k) {
      s.sources.push_back({{faces[k], 1.0}});
      s.targets.push_back(t[k]);
    }
    out.push_back(s);
  }
  return out;
}

Seed default_seed(const Polyhedron& P, const Labeling& L) {
  if (auto s = seed_do13_frame(P, L)) return *s;
  try {
    return seed_standard(P, L);
  } catch (const Error&) {
    return Seed{};
  }
}

Eigen::Matrix4d frame_map(const std::array<Vec4, 3>& src, const std::array<Vec4, 3>& dst) {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (std::abs(lorentz_product(src[a], src[b]) - lorentz_product(dst[a], dst[b])) > 1e-8)
        throw Error(ErrorKind::Precondition, "frame vectors have different Gram matrices");
  Eigen::Matrix4d S, T;
  for (int k = 0; k < 3; ++k) {
    S.col(k) = to_eigen(src[k]);
    T.col(k) = to_eigen(dst[k]);
  }
  S.col(3) = timelike_completion(src);
  T.col(3) = timelike_completion(dst);
  return T * S.inverse();
}

HyperbolicRealization solve_normals(const Polyhedron& P, const Labeling& L, const Seed& seed,
                                    const SolveOptions& opt) {
  check_labeling(P, L);
  const int f = P.num_faces();
  std::vector<Vec4> X = seed.initial.empty() ? base_solution(P, L, opt) : seed.initial;
  if (static_cast<int>(X.size()) != f) throw Error(ErrorKind::Precondition, "initial guess has wrong size");
  std::vector<char> pinned(f, 0);
  if (seed.kind != AnchorKind::None) {
    if (seed.sources.size() != 3 || seed.targets.size() != 3)
      throw Error(ErrorKind::Precondition, "an anchor needs three frame vectors");
    std::array<Vec4, 3> src, dst;
    for (int k = 0; k < 3; ++k) {
      src[k] = combine(X, seed.sources[k]);
      dst[k] = seed.targets[k];
    }
    if (seed.initial.empty()) X = transform_all(frame_map(src, dst), X);
    for (int k = 0; k < 3; ++k)
      if (seed.sources[k].size() == 1) {
        X[seed.sources[k][0].first] = seed.targets[k];
        pinned[seed.sources[k][0].first] = 1;
      }
  }
  auto tg = edge_targets(L);
  double res = newton(P, tg, X, pinned, opt.max_iter);
  if (res > opt.tol) throw Error(ErrorKind::NoConvergence, "Newton residual " + std::to_string(res));
  HyperbolicRealization R;
  R.polyhedron = P.name;
  R.orders = L;
  R.normals = X;
  R.gram = gram_matrix(X);
  R.residual = res;
  R.gauge = seed;
  R.gauge.initial.clear();
  // Non-adjacent faces must not meet: a positive off-diagonal entry signals
  // the mirror branch of a partially pinned solve.
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j)
      if (i != j && R.gram(i, j) > 1e-9) throw Error(ErrorKind::WrongBranch, "Gram entry has the wrong sign");
  return R;
}

GramReport validate_gram(const Polyhedron& P, const HyperbolicRealization& R, double tol) {
  GramReport g;
  const int f = P.num_faces();
  const auto& G = R.gram;
  auto fail = [&](const std::string& why) {
    g.failure = why;
    return g;
  };
  g.unit_diagonal = true;
  for (int i = 0; i < f; ++i) g.unit_diagonal &= std::abs(G(i, i) - 1) <= tol;
  g.nonpositive_offdiagonal = true;
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j)
      if (i != j) g.nonpositive_offdiagonal &= G(i, j) <= tol;
  // Indecomposable: the graph of nonzero entries is connected.
  {
    std::vector<char> seen(f, 0);
    std::vector<int> st{0};
    seen[0] = 1;
    while (!st.empty()) {
      int i = st.back();
      st.pop_back();
      for (int j = 0; j < f; ++j)
        if (!seen[j] && std::abs(G(i, j)) > tol) {
          seen[j] = 1;
          st.push_back(j);
        }
    }
    g.indecomposable = std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const auto& ev = es.eigenvalues();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  int neg = 0, pos = 0;
  for (int k = 0; k < ev.size(); ++k) {
    if (ev(k) < -1e-9 * scale) ++neg;
    if (ev(k) > 1e-9 * scale) ++pos;
  }
  g.signature_ok = neg == 1 && pos == 3;
  Eigen::MatrixXd N(f, 4);
  for (int i = 0; i < f; ++i)
    for (int c = 0; c < 4; ++c) N(i, c) = R.normals[i][c];
  g.spans = Eigen::FullPivLU<Eigen::MatrixXd>(N).rank() == 4;

  // Cone {x : <x, nu_i> <= 0} meets H^3. Sufficient: all first coordinates
  // positive, then e1 is interior. Otherwise use the centroid of the
  // future-normalized vertices.
  bool firsts = true;
  for (const auto& v : R.normals) firsts &= v[0] > tol;
  if (firsts) {
    g.via_first_coordinates = true;
    g.cone_meets_h3 = true;
    g.interior_point = {1, 0, 0, 0};
  } else {
    Eigen::Vector4d cen = Eigen::Vector4d::Zero();
    bool ok = true;
    for (const auto& vx : P.vertices) {
      Eigen::MatrixXd A(vx.size(), 4);
      for (size_t r = 0; r < vx.size(); ++r) A.row(r) = kJ.cwiseProduct(to_eigen(R.normals[vx[r]])).transpose();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
      Eigen::Vector4d w = svd.matrixV().col(3);
      double q = lorentz_product(to_vec(w), to_vec(w));
      if (q >= 0) {
        ok = false;
        break;
      }
      w /= std::sqrt(-q);
      if (w(0) < 0) w = -w;
      cen += w;
    }
    if (ok) {
      Vec4 c = to_vec(cen);
      double q = lorentz_product(c, c);
      ok = q < 0;
      for (const auto& v : R.normals) ok = ok && lorentz_product(c, v) < 0;
      if (ok) {
        double s = std::sqrt(-q);
        g.interior_point = {c[0] / s, c[1] / s, c[2] / s, c[3] / s};
      }
    }
    g.cone_meets_h3 = ok;
  }
  if (!g.unit_diagonal) return fail("diagonal entries differ from 1");
  if (!g.nonpositive_offdiagonal) return fail("positive off-diagonal entry");
  if (!g.indecomposable) return fail("Gram matrix is decomposable");
  if (!g.signature_ok) return fail("signature is not (1,3)");
  if (!g.spans) return fail("normals do not span R^4");
  if (!g.cone_meets_h3) return fail("polyhedral cone misses hyperbolic space");
  g.valid = true;
  return g;
}

Labeling prism_family_labeling(int n) {
  Labeling L(3 * n, 3);
  for (int k = 0; k < n; ++k) L[n + k] = 2;
  return L;
}

HyperbolicRealization prism_realization(int n) {
  if (n < 5) throw Error(ErrorKind::UnsupportedN, "the symmetric prism family needs n >= 5");
  auto P = prism(n);
  HyperbolicRealization R;
  R.polyhedron = P.name;
  R.orders = prism_family_labeling(n);
  for (const auto& v : formulas::prism_normals<double>(n)) R.normals.push_back({v[0], v[1], v[2], v[3]});
  R.gram = gram_matrix(R.normals);
  R.residual = max_abs(hyperbolic_residuals(P, edge_targets(R.orders), R.normals));
  return R;
}

Labeling do13_labeling() {
  auto P = dodecahedron();
  auto X = formulas::do13_catalog_normals<double>();
  Labeling L(P.num_edges());
  for (int e = 0; e < P.num_edges(); ++e) {
    double g = formulas::lorentz(X[P.edges[e][0]], X[P.edges[e][1]]);
    L[e] = std::abs(g) < 1e-9 ? 2 : 3;
  }
  return L;
}

HyperbolicRealization do13_realization() {
  auto P = dodecahedron();
  HyperbolicRealization R;
  R.polyhedron = P.name;
  R.orders = do13_labeling();
  for (const auto& v : formulas::do13_catalog_normals<double>()) R.normals.push_back({v[0], v[1], v[2], v[3]});
  R.gram = gram_matrix(R.normals);
  R.residual = max_abs(hyperbolic_residuals(P, edge_targets(R.orders), R.normals));
  if (auto s = seed_do13_frame(P, R.orders)) R.gauge = *s;
  return R;
}

HyperbolicRealization continuation_solve(const Polyhedron& P, const HyperbolicRealization& base,
                                         const Labeling& base_L, const Labeling& target_L, int steps,
                                         const SolveOptions& opt) {
  check_labeling(P, base_L);
  check_labeling(P, target_L);
  if (base_L == target_L) return base;
  auto X = track_angles(P, base.normals, angles_of(base_L), angles_of(target_L), steps, opt);
  Seed s;
  s.initial = X;
  // Keep the base gauge when its frame faces keep their mutual angles.
  if (base.gauge.kind != AnchorKind::None) {
    bool same = true;
    for (const auto& a : base.gauge.sources)
      for (const auto& b : base.gauge.sources)
        for (auto [i, wi] : a)
          for (auto [j, wj] : b)
            if (P.adjacent(i, j)) same &= base_L[P.edge(i, j)] == target_L[P.edge(i, j)];
    if (same) {
      s.kind = base.gauge.kind;
      s.sources = base.gauge.sources;
      s.targets = base.gauge.targets;
      std::array<Vec4, 3> src, dst;
      for (int k = 0; k < 3; ++k) {
        src[k] = combine(X, s.sources[k]);
        dst[k] = s.targets[k];
      }
      s.initial = transform_all(frame_map(src, dst), X);
    }
  }
  return solve_normals(P, target_L, s, opt);
}

HyperbolicRealization realize(const Polyhedron& P, const Labeling& L, const Seed& seed, const SolveOptions& opt) {
  auto R = solve_normals(P, L, seed, opt);
  auto rep = validate_gram(P, R);
  if (!rep.valid) throw Error(ErrorKind::ValidationFailed, rep.failure);
  return R;
}

HyperbolicRealization realize(const Polyhedron& P, const Labeling& L, const SolveOptions& opt) {
  return realize(P, L, default_seed(P, L), opt);
}

std::optional<std::vector<int>> isomorphism(const Polyhedron& A, const Polyhedron& B) {
  const int f = A.num_faces();
  if (f != B.num_faces() || A.num_edges() != B.num_edges()) return std::nullopt;
  auto pos = [](const std::vector<int>& c, int x) {
    return static_cast<int>(std::find(c.begin(), c.end(), x) - c.begin());
  };
  // Both rotation systems are consistently oriented, so a map is fixed by the
  // image of one dart and a global orientation; propagate along darts.
  int a0 = 0, x0 = A.cycles[0][0];
  for (int b0 = 0; b0 < f; ++b0)
    for (int y0 : B.cycles[b0])
      for (int dir : {1, -1}) {
        std::vector<int> m(f, -1), inv(f, -1);
        std::set<std::pair<int, int>> seen;
        std::vector<std::array<int, 4>> st{{a0, x0, b0, y0}};
        bool ok = true;
        while (!st.empty() && ok) {
          auto [a, x, b, y] = st.back();
          st.pop_back();
          if (!seen.insert({a, x}).second) continue;
          for (auto [p, q] : {std::pair{a, b}, std::pair{x, y}}) {
            if ((m[p] != -1 && m[p] != q) || (inv[q] != -1 && inv[q] != p)) ok = false;
            m[p] = q;
            inv[q] = p;
          }
          if (!ok || A.cycles[a].size() != B.cycles[b].size()) {
            ok = false;
            break;
          }
          const auto& ca = A.cycles[a];
          const auto& cb = B.cycles[b];
          int na = static_cast<int>(ca.size());
          int xn = ca[(pos(ca, x) + 1) % na];
          int yn = cb[((pos(cb, y) + dir) % na + na) % na];
          st.push_back({a, xn, b, yn});
          st.push_back({x, a, y, b});
        }
        if (!ok || std::count(m.begin(), m.end(), -1)) continue;
        for (int i = 0; i < f && ok; ++i)
          for (int j = 0; j < f && ok; ++j) ok = A.adjacent(i, j) == B.adjacent(m[i], m[j]);
        if (ok) return m;
      }
  return std::nullopt;
}

std::optional<PrismShape> prism_shape(const Polyhedron& P) {
  const int f = P.num_faces();
  const int n = f - 2;
  if (n < 3 || P.num_edges() != 3 * n) return std::nullopt;
  for (int top = 0; top < f; ++top) {
    if (static_cast<int>(P.cycles[top].size()) != n) continue;
    for (int bot = top + 1; bot < f; ++bot) {
      if (static_cast<int>(P.cycles[bot].size()) != n || P.adjacent(top, bot)) continue;
      bool ok = true;
      for (int s : P.cycles[top]) ok &= P.adjacent(s, bot) && P.cycles[s].size() == 4;
      if (!ok) continue;
      PrismShape S;
      S.top = top;
      S.bottom = bot;
      S.sides = P.cycles[top];
      return S;
    }
  }
  return std::nullopt;
}

}  // namespace coxdef
