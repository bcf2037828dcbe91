#include "coxdef/localdim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coxdef/error.hpp"
#include "coxdef/groebner.hpp"
#include "coxdef/linalg.hpp"
#include "formulas.hpp"

namespace coxdef {

Eigen::VectorXd flatten(const VinbergPoint& p) {
  Eigen::VectorXd x(4 * p.size());
  for (size_t i = 0; i < p.size(); ++i)
    for (int k = 0; k < 4; ++k) x(4 * i + k) = p[i][k];
  return x;
}

VinbergPoint unflatten(const Eigen::VectorXd& x) {
  VinbergPoint p(x.size() / 4);
  for (size_t i = 0; i < p.size(); ++i)
    for (int k = 0; k < 4; ++k) p[i][k] = x(4 * i + k);
  return p;
}

namespace {

double alpha_at(const VinbergSystem& S, int i, const Eigen::VectorXd& x, int j) {
  const Vec4& a = S.alphas[i];
  return a[0] * x(4 * j) + a[1] * x(4 * j + 1) + a[2] * x(4 * j + 2) + a[3] * x(4 * j + 3);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

Eigen::VectorXd QuadraticModel::B(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(system.num_equations());
  for (int k = 0; k < system.num_equations(); ++k) {
    const auto& q = system.equations[k];
    if (q.kind != EquationKind::Product) continue;
    out(k) = 0.5 * (alpha_at(system, q.i, x, q.j) * alpha_at(system, q.j, y, q.i) +
                    alpha_at(system, q.i, y, q.j) * alpha_at(system, q.j, x, q.i));
  }
  return out;
}

Eigen::VectorXd QuadraticModel::Q(const Eigen::VectorXd& c) const { return B(c, c); }

Eigen::VectorXd QuadraticModel::Phi(const Eigen::VectorXd& c) const {
  return residuals(system, unflatten(flatten(point) + c));
}

QuadraticModel quadratic_model(const VinbergSystem& S, const VinbergPoint& p) {
  QuadraticModel M;
  M.system = S;
  M.point = p;
  M.L = jacobian(S, p);
  return M;
}

ObstructionResult second_order_obstruction(const QuadraticModel& M, const Eigen::VectorXd& v, double rel_tol) {
  ObstructionResult r;
  r.w = Eigen::VectorXd::Zero(M.L.cols());
  Eigen::VectorXd q = M.Q(v);
  double qn = q.norm();
  if (v.norm() == 0 || qn == 0) return r;
  auto svd = jacobi_svd(M.L);
  double tau = static_cast<double>(std::max(M.L.rows(), M.L.cols())) * std::numeric_limits<double>::epsilon() * svd.s(0);
  Eigen::VectorXd negq = -q;
  r.w = svd_solve<double>(svd, negq, tau);
  r.relative_residual = (M.L * r.w + q).norm() / qn;
  r.obstructed = r.relative_residual > rel_tol;
  if (r.obstructed) r.w.setZero();
  return r;
}

// ---------------------------------------------------------------------------
// Cone of second-order unobstructed kernel directions.

namespace {

using Mat = Eigen::MatrixXd;

struct Eig {
  Eigen::VectorXd values;  // ascending
  Mat vectors;
};

Eig eig(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es((H + H.transpose()) / 2);
  return {es.eigenvalues(), es.eigenvectors()};
}

bool vanishes_on(const std::vector<Mat>& forms, const Eigen::VectorXd& s, double tol) {
  for (const auto& G : forms)
    if (std::abs(s.dot(G * s)) > tol) return false;
  return true;
}

// Restriction of every form to span(P) (columns orthonormal) is zero.
bool vanishes_on_plane(const std::vector<Mat>& forms, const Mat& P, double tol) {
  for (const auto& G : forms)
    if ((P.transpose() * G * P).norm() > tol) return false;
  return true;
}

std::vector<Eigen::VectorXd> circle(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int count) {
  std::vector<Eigen::VectorXd> out;
  for (int k = 0; k < count; ++k) {
    double phi = M_PI * (k + 0.5) / count;  // lines: half circle suffices
    out.push_back((std::cos(phi) * a + std::sin(phi) * b).normalized());
  }
  return out;
}

// Planes (as orthonormal 3x2 bases) making up the zero set of a single
// ternary form, when the zero set is a union of planes.
std::vector<Mat> zero_planes(const Eig& E, double eps) {
  std::vector<int> nz, z;
  for (int i = 0; i < 3; ++i) (std::abs(E.values(i)) > eps ? nz : z).push_back(i);
  std::vector<Mat> out;
  if (nz.size() == 1) {
    Mat P(3, 2);
    P.col(0) = E.vectors.col(z[0]);
    P.col(1) = E.vectors.col(z[1]);
    out.push_back(P);
  } else if (nz.size() == 2 && E.values(nz[0]) * E.values(nz[1]) < 0) {
    double la = std::abs(E.values(nz[0])), lb = std::abs(E.values(nz[1]));
    for (int sg : {1, -1}) {
      Mat P(3, 2);
      P.col(0) = E.vectors.col(z[0]);
      P.col(1) = (std::sqrt(lb) * E.vectors.col(nz[0]) + sg * std::sqrt(la) * E.vectors.col(nz[1])).normalized();
      out.push_back(P);
    }
  }
  return out;
}

// Common zero lines of several ternary forms on the unit sphere, by
// multistart Gauss-Newton on sum (s^T G s)^2.
std::vector<Eigen::VectorXd> common_lines(const std::vector<Mat>& forms, double tol) {
  std::vector<Eigen::VectorXd> found;
  const int starts = 400;
  const double golden = M_PI * (3 - std::sqrt(5.0));
  for (int k = 0; k < starts; ++k) {
    double y = 1 - (k + 0.5) * 2.0 / starts, r = std::sqrt(1 - y * y);
    Eigen::VectorXd s(3);
    s << r * std::cos(golden * k), y, r * std::sin(golden * k);
    for (int it = 0; it < 100; ++it) {
      Eigen::VectorXd f(forms.size());
      Mat J(forms.size(), 3);
      for (size_t j = 0; j < forms.size(); ++j) {
        f(j) = s.dot(forms[j] * s);
        J.row(j) = 2 * (forms[j] * s).transpose();
      }
      // Stay on the sphere: remove the radial component.
      Mat Pt = Mat::Identity(3, 3) - s * s.transpose();
      Eigen::VectorXd ds = (J * Pt).completeOrthogonalDecomposition().solve(f);
      s = (s - Pt * ds).normalized();
      if (f.norm() < 1e-15) break;
    }
    if (!vanishes_on(forms, s, tol)) continue;
    bool dup = false;
    for (const auto& q : found)
      if (std::abs(std::abs(q.dot(s)) - 1) < 1e-6) dup = true;
    if (!dup) found.push_back(s);
  }
  return found;
}

}  // namespace

ConeResult cone_dimension(const QuadraticModel& M, const Eigen::MatrixXd& K, const Eigen::MatrixXd& C) {
  ConeResult out;
  const int k = static_cast<int>(K.cols());
  out.kernel_dim = k;
  if (k > 3) throw Error(ErrorKind::TooManyKernelDims, std::to_string(k) + " kernel dimensions");
  if (k == 0) {
    out.method = "trivial kernel";
    return out;
  }
  const int m = static_cast<int>(C.cols());
  std::vector<std::vector<Eigen::VectorXd>> Bkk(k, std::vector<Eigen::VectorXd>(k));
  double scale = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      Bkk[a][b] = Bkk[b][a] = M.B(K.col(a), K.col(b));
      scale = std::max(scale, Bkk[a][b].norm());
    }
  if (scale == 0) scale = 1;
  // Forms packed with sqrt(2) weights so the Euclidean norm is Frobenius.
  const int pk = k * (k + 1) / 2;
  Mat F = Mat::Zero(std::max(m, 1), pk);
  for (int j = 0; j < m; ++j) {
    int col = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a; b < k; ++b, ++col) F(j, col) = C.col(j).dot(Bkk[a][b]) * (a == b ? 1.0 : std::sqrt(2.0));
  }
  Eigen::JacobiSVD<Mat> svd(F, Eigen::ComputeFullV);
  std::vector<Mat> forms;
  for (int t = 0; t < svd.singularValues().size(); ++t) {
    if (svd.singularValues()(t) <= 1e-8 * scale) continue;
    Mat G(k, k);
    int col = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a; b < k; ++b, ++col) {
        double val = svd.matrixV()(col, t) / (a == b ? 1.0 : std::sqrt(2.0));
        G(a, b) = G(b, a) = val;
      }
    forms.push_back(G);
  }
  out.forms = static_cast<int>(forms.size());
  auto to_kernel = [&](const Eigen::VectorXd& s) { return Eigen::VectorXd((K * s).normalized()); };
  const double tol = 1e-7;

  if (forms.empty()) {
    out.dimension = k;
    out.method = "no second-order obstruction";
    Mat I = Mat::Identity(k, k);
    if (k == 1) out.directions.push_back(to_kernel(I.col(0)));
    else
      for (const auto& s : circle(I.col(0), I.col(1), 8)) out.directions.push_back(to_kernel(s));
    return out;
  }
  if (k == 1) {
    out.dimension = 0;
    out.method = "kernel direction obstructed";
    return out;
  }
  Eig E = eig(forms[0]);
  const double eps = 1e-8 * E.values.cwiseAbs().maxCoeff();
  if (k == 2) {
    std::vector<Eigen::VectorXd> cand;
    double l1 = E.values(0), l2 = E.values(1);
    if (std::abs(l1) <= eps) cand.push_back(E.vectors.col(0));
    else if (std::abs(l2) <= eps) cand.push_back(E.vectors.col(1));
    else if (l1 * l2 < 0) {
      for (int sg : {1, -1})
        cand.push_back((std::sqrt(std::abs(l2)) * E.vectors.col(0) + sg * std::sqrt(std::abs(l1)) * E.vectors.col(1))
                           .normalized());
    }
    for (const auto& s : cand)
      if (vanishes_on(forms, s, tol)) out.directions.push_back(to_kernel(s));
    out.dimension = out.directions.empty() ? 0 : 1;
    out.method = "binary quadratic forms";
    return out;
  }
  // k == 3
  std::vector<int> nz;
  for (int i = 0; i < 3; ++i)
    if (std::abs(E.values(i)) > eps) nz.push_back(i);
  auto planes = zero_planes(E, eps);
  for (const auto& P : planes) {
    if (!vanishes_on_plane(forms, P, tol)) continue;
    out.dimension = 2;
    out.method = forms.size() == 1 ? "single ternary form, planes" : "common plane of ternary forms";
    for (const auto& s : circle(P.col(0), P.col(1), 8)) out.directions.push_back(to_kernel(s));
    return out;
  }
  if (forms.size() == 1) {
    out.method = "single ternary form";
    if (nz.size() == 3) {
      bool definite = (E.values(0) > 0) == (E.values(2) > 0);
      if (definite) {
        out.dimension = 0;
        return out;
      }
      // Indefinite: a circular cone.
      Eigen::VectorXd lam = E.values;
      if ((lam.array() > 0).count() == 1) lam = -lam;  // two positive, one negative
      int neg = 0;
      for (int i = 0; i < 3; ++i)
        if (lam(i) < 0) neg = i;
      int a = (neg + 1) % 3, b = (neg + 2) % 3;
      for (int t = 0; t < 8; ++t) {
        double phi = 2 * M_PI * t / 8;
        Eigen::VectorXd s = std::cos(phi) / std::sqrt(lam(a)) * E.vectors.col(a) +
                            std::sin(phi) / std::sqrt(lam(b)) * E.vectors.col(b) +
                            1 / std::sqrt(-lam(neg)) * E.vectors.col(neg);
        out.directions.push_back(to_kernel(s.normalized()));
      }
      out.dimension = 2;
      return out;
    }
    // Two nonzero eigenvalues of one sign: the null line.
    for (int i = 0; i < 3; ++i)
      if (std::abs(E.values(i)) <= eps) out.directions.push_back(to_kernel(E.vectors.col(i)));
    out.dimension = 1;
    return out;
  }
  auto lines = common_lines(forms, tol);
  out.method = "common zero lines (multistart search)";
  for (const auto& s : lines) out.directions.push_back(to_kernel(s));
  out.dimension = lines.empty() ? 0 : 1;
  return out;
}

// ---------------------------------------------------------------------------
// Curve tracking.

std::optional<VinbergPoint> track_point(const VinbergSystem& S, const VinbergPoint& p, const Eigen::VectorXd& v,
                                        double delta, const TrackOptions& opt, const Eigen::VectorXd& w) {
  Eigen::VectorXd u = v.normalized();
  Eigen::VectorXd x = flatten(p) + delta * u;
  if (w.size() == x.size()) x += delta * delta * w;
  const Mat Pv = Mat::Identity(x.size(), x.size()) - u * u.transpose();
  double best = std::numeric_limits<double>::infinity();
  int stall = 0;
  for (int it = 0; it < opt.max_iter; ++it) {
    Eigen::VectorXd r = residuals(S, unflatten(x));
    double rn = r.cwiseAbs().maxCoeff();
    if (rn < opt.tol) return unflatten(x);
    if (rn < best * 0.9) {
      best = rn;
      stall = 0;
    } else if (++stall > 6) {
      return std::nullopt;
    }
    Mat J = jacobian(S, unflatten(x)) * Pv;
    Eigen::VectorXd dx = J.completeOrthogonalDecomposition().solve(r);
    x -= Pv * dx;
  }
  return std::nullopt;
}

TrackEvidence curve_track(const VinbergSystem& S, const VinbergPoint& p, const Eigen::VectorXd& v,
                          const TrackOptions& opt, const Eigen::VectorXd& w) {
  TrackEvidence ev;
  ev.success = true;
  Eigen::VectorXd u = v.normalized();
  Eigen::VectorXd x0 = flatten(p);
  double delta = opt.delta;
  for (int rung = 0; rung < opt.rungs; ++rung, delta /= 2) {
    ev.deltas.push_back(delta);
    // Run Newton manually to keep the final residual for the record.
    Eigen::VectorXd x = x0 + delta * u;
    if (w.size() == x.size()) x += delta * delta * w;
    const Mat Pv = Mat::Identity(x.size(), x.size()) - u * u.transpose();
    double rn = 0;
    int it = 0;
    double best = std::numeric_limits<double>::infinity();
    int stall = 0;
    for (; it < opt.max_iter; ++it) {
      rn = residuals(S, unflatten(x)).cwiseAbs().maxCoeff();
      if (rn < opt.tol) break;
      if (rn < best * 0.9) {
        best = rn;
        stall = 0;
      } else if (++stall > 6) {
        break;
      }
      Mat J = jacobian(S, unflatten(x)) * Pv;
      x -= Pv * J.completeOrthogonalDecomposition().solve(residuals(S, unflatten(x)));
    }
    double dist = (x - x0).norm();
    ev.residuals.push_back(rn);
    ev.distances.push_back(dist);
    ev.iterations.push_back(it);
    if (rn >= opt.tol || dist < delta / 2) {
      ev.success = false;
      if (ev.failure.empty())
        ev.failure = "rung delta=" + fmt(delta) + ": residual " + fmt(rn) + ", distance " + fmt(dist);
    }
  }
  return ev;
}

// ---------------------------------------------------------------------------
// Symmetric families.

double SymmetricFamily::max_residual(int samples, double width) const {
  double worst = 0;
  for (int k = 0; k < samples; ++k) {
    double t = base_parameter - width + 2 * width * k / std::max(1, samples - 1);
    worst = std::max(worst, residuals(system, point(t)).cwiseAbs().maxCoeff());
  }
  return worst;
}

SymmetricFamily symmetric_slice_prism(int n) {
  if (n < 5) throw Error(ErrorKind::UnsupportedN, "the prism family needs n >= 5");
  auto P = prism(n);
  SymmetricFamily F;
  F.name = "prism" + std::to_string(n);
  F.realization = prism_realization(n);
  F.system = build_system(P, F.realization.orders, F.realization);
  F.base_parameter = 0;
  F.parameter_names = {"b_1,4"};
  const double c = std::cos(2 * M_PI / n);
  const double x = std::sqrt(c / (1 - c)), y = std::sqrt((1 - c) / (4 * c)), z = std::sqrt((1 + 3 * c) / (4 * c));
  const auto nu = F.realization.normals;
  F.point = [n, x, y, z, nu](double t) {
    VinbergPoint b(n + 2);
    for (int k = 0; k < n; ++k) b[k] = {2 * nu[k][0], 2 * nu[k][1], 2 * nu[k][2], t};
    // Caps: a_{cap,1} a_{1,cap} = 1 with b_cap on the axis and a_cap,cap = 2.
    double A = -2 * x * y + z * t;
    double b4 = (2 - y / (x * A)) / z;
    b[n] = {(z * b4 - 2) / y, 0, 0, b4};
    double B = -2 * x * y - z * t;
    double g4 = (y / (x * B) - 2) / z;
    b[n + 1] = {(-z * g4 - 2) / y, 0, 0, g4};
    return b;
  };
  return F;
}

SymmetricFamily symmetric_slice_do13() {
  SymmetricFamily F;
  F.name = "do13";
  F.realization = do13_realization();
  auto P = dodecahedron();
  F.system = build_system(P, F.realization.orders, F.realization);
  auto D = formulas::do13<double>();
  auto ax = D.axis_numbering();
  auto J = [](const formulas::V4<double>& v) { return formulas::V4<double>{-v[0], v[1], v[2], v[3]}; };
  auto ev = [](const formulas::V4<double>& a, const formulas::V4<double>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
  };
  F.base_parameter = 2 * ax[0][3];
  F.parameter_names = {"b_1,4", "b_2,4", "b_11,4", "b_12,4"};
  F.point = [D, ax, J, ev](double t) {
    auto a1 = J(ax[0]), a2 = J(ax[1]), a11 = J(ax[10]), a12 = J(ax[11]);
    const double r2 = std::sqrt(2.0);
    formulas::V4<double> b1{0, r2 / D.s, 0, t};
    b1[0] = (2 - ev(a1, b1)) / a1[0];
    // b2 = (p + q b24, r2 c / s, r2, b24) normalized by alpha_2.
    formulas::V4<double> b2{0, r2 * D.c / D.s, r2, 0};
    double p0 = (2 - ev(a2, b2)) / a2[0], q0 = -a2[3] / a2[0];
    double a21 = ev(a2, b1);
    // alpha_1(b2) = r0 + r1 b24 = 1 / a21
    formulas::V4<double> base{p0, b2[1], b2[2], 0};
    double r0 = ev(a1, base), r1 = a1[0] * q0 + a1[3];
    double b24 = (1 / a21 - r0) / r1;
    b2 = {p0 + q0 * b24, b2[1], b2[2], b24};
    // Axis faces: b = (beta1, 0, 0, beta4), alpha(b) = 2, product with the band face = 1.
    auto axis_vec = [&](const formulas::V4<double>& aa, const formulas::V4<double>& band_alpha,
                        const formulas::V4<double>& band_b) {
      double a_ax_band = ev(aa, band_b);
      // beta1 = (2 - aa3 beta4) / aa0; band_alpha(b) = band0 beta1 + band3 beta4 = 1 / a_ax_band
      double k0 = band_alpha[0] * 2 / aa[0], k1 = band_alpha[3] - band_alpha[0] * aa[3] / aa[0];
      double beta4 = (1 / a_ax_band - k0) / k1;
      return formulas::V4<double>{(2 - aa[3] * beta4) / aa[0], 0, 0, beta4};
    };
    auto b11 = axis_vec(a11, a1, b1);
    auto b12 = axis_vec(a12, a2, b2);
    std::vector<formulas::V4<double>> axb(12);
    axb[0] = b1;
    axb[1] = b2;
    for (int k = 2; k < 10; ++k) axb[k] = D.L(D.L(axb[k - 2]));
    axb[10] = b11;
    axb[11] = b12;
    VinbergPoint out(12);
    for (int f = 0; f < 12; ++f) {
      const auto& v = axb[formulas::kDo13Index[f] - 1];
      out[f] = {v[0], v[1], v[2], v[3]};
    }
    return out;
  };
  return F;
}

namespace {

// Transport a family on (P, L0) to a symmetric labeling L of the same P.
std::optional<SymmetricFamily> transported(const Polyhedron& P, const Labeling& L, SymmetricFamily base) {
  const Labeling& L0 = base.realization.orders;
  if (L == L0) return base;
  auto G = symmetry_group(P);
  for (int g = 0; g < G.size(); ++g) {
    if (transport(G.edge_maps[g], L) != L0) continue;
    std::vector<int> perm = G.elements[g];
    SymmetricFamily F = base;
    HyperbolicRealization R = base.realization;
    for (int f = 0; f < P.num_faces(); ++f) R.normals[f] = base.realization.normals[perm[f]];
    R.orders = L;
    R.gram = gram_matrix(R.normals);
    R.gauge = Seed{};
    F.realization = R;
    F.system = build_system(P, L, R);
    auto inner = base.point;
    F.point = [inner, perm](double t) {
      VinbergPoint b0 = inner(t), b(b0.size());
      for (size_t f = 0; f < b.size(); ++f) b[f] = b0[perm[f]];
      return b;
    };
    return F;
  }
  return std::nullopt;
}

}  // namespace

std::optional<SymmetricFamily> family_for(const Polyhedron& P, const Labeling& L) {
  auto shape = prism_shape(P);
  if (shape && P.num_faces() >= 7) {
    int n = P.num_faces() - 2;
    Polyhedron Q = prism(n);
    if (P.cycles == Q.cycles && P.edges == Q.edges) return transported(P, L, symmetric_slice_prism(n));
    return std::nullopt;
  }
  if (P.num_faces() == 12) {
    Polyhedron Q = dodecahedron();
    if (P.cycles == Q.cycles && P.edges == Q.edges) return transported(P, L, symmetric_slice_do13());
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

const char* certification_name(Certification c) {
  switch (c) {
    case Certification::FullRank: return "full-rank";
    case Certification::ExactGroebner: return "exact-groebner";
    case Certification::ExactFamily: return "exact-symmetric-family";
    case Certification::ObstructionRigid: return "obstruction-rigid";
    case Certification::NumericalEvidence: return "numerical-evidence";
    case Certification::Undecided: return "undecided";
  }
  return "?";
}

LocalDimVerdict cone_and_track(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R,
                               const JacobianReport& rep, const LocalDimOptions& opt) {
  LocalDimVerdict v;
  auto S = build_system(P, L, R);
  auto p = hyperbolic_point(R);
  auto M = quadratic_model(S, p);
  ConeResult cone;
  try {
    cone = cone_dimension(M, rep.kernel, rep.cokernel);
  } catch (const Error& e) {
    v.certification = Certification::Undecided;
    v.method = "cone dimension";
    v.details.push_back(e.what());
    return v;
  }
  v.cone_dim = cone.dimension;
  v.details.push_back("cone dimension " + std::to_string(cone.dimension) + " (" + cone.method + ", " +
                      std::to_string(cone.forms) + " projected forms)");
  if (cone.dimension == 0) {
    v.A = 0;
    v.certification = Certification::ObstructionRigid;
    v.method = "second-order obstruction";
    v.status = "rigid, second-order certificate";
    for (int a = 0; a < rep.kernel.cols(); ++a) {
      auto ob = second_order_obstruction(M, rep.kernel.col(a));
      v.details.push_back("kernel vector " + std::to_string(a + 1) + ": projection residual " +
                          fmt(ob.relative_residual));
    }
    return v;
  }
  v.method = "cone dimension + curve tracking";
  bool all = true;
  int tracked = 0;
  for (const auto& dir : cone.directions) {
    if (tracked >= 8) break;
    auto ob = second_order_obstruction(M, dir);
    auto ev = curve_track(S, p, dir, opt.track, ob.w);
    ++tracked;
    double worst = 0;
    for (double r : ev.residuals) worst = std::max(worst, r);
    v.details.push_back("direction " + std::to_string(tracked) + ": " + (ev.success ? "tracked" : "failed") +
                        ", max residual " + fmt(worst) + (ev.success ? "" : " (" + ev.failure + ")"));
    if (!ev.success) all = false;
  }
  if (all) {
    v.A = cone.dimension;
    v.certification = Certification::NumericalEvidence;
    v.status = "deforms, numerical evidence";
  } else {
    v.A = cone.dimension;
    v.certification = Certification::Undecided;
    v.status = "undecided; cone dimension is an upper-bound heuristic";
  }
  return v;
}

LocalDimVerdict local_dimension(const Polyhedron& P, const Labeling& L, const HyperbolicRealization& R,
                                const JacobianReport& rep, const LocalDimOptions& opt) {
  LocalDimVerdict v;
  if (rep.J) {
    v.A = std::max(rep.O, 0);
    v.certification = Certification::FullRank;
    v.method = "full-rank Jacobian";
    v.status = v.A == 0 ? "rigid" : "smooth of dimension " + std::to_string(v.A);
    return v;
  }
  std::vector<std::string> notes;
  if (opt.use_families) {
    if (auto fam = family_for(P, L)) {
      double res = fam->max_residual(20, 0.05);
      notes.push_back("exact family " + fam->name + ", max residual " + fmt(res) + " at 20 parameters");
      if (res < 1e-12) {
        v.certification = Certification::ExactFamily;
        v.method = "symmetric family";
        v.details = notes;
        if (rep.I == 1) {
          v.A = 1;
          v.status = "deforms; family gives A >= 1 and I = 1 bounds A <= 1";
        } else {
          v.A = 1;
          v.lower_bound = true;
          v.status = "deforms; family gives A >= 1";
          auto num = cone_and_track(P, L, R, rep, opt);
          v.cone_dim = num.cone_dim;
          for (auto& d : num.details) v.details.push_back(d);
        }
        return v;
      }
    }
  }
  if (opt.use_groebner) {
    ExactOptions eo;
    eo.groebner.term_budget = opt.term_budget;
    eo.allow_slow = opt.allow_slow_groebner;
    try {
      if (auto ex = exact_local_dimension(P, L, eo)) {
        v.A = ex->A;
        v.certification = Certification::ExactGroebner;
        v.method = "Groebner basis";
        v.free_variables = ex->free_variables;
        v.status = v.A == 0 ? "rigid, exact" : "deforms, exact";
        v.details = notes;
        std::string fv;
        for (auto& s : ex->free_variables) fv += (fv.empty() ? "" : ", ") + s;
        v.details.push_back("free variables {" + fv + "}");
        for (auto& s : ex->analysis.syzygies_verified) v.details.push_back("syzygy verified: " + s);
        if (ex->radical_steps) v.details.push_back("radical steps: " + std::to_string(ex->radical_steps));
        return v;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonTriangular && e.kind() != ErrorKind::ResourceExceeded) throw;
      notes.push_back(std::string("groebner branch: ") + e.what());
    }
  }
  auto num = cone_and_track(P, L, R, rep, opt);
  notes.insert(notes.end(), num.details.begin(), num.details.end());
  num.details = notes;
  return num;
}

}  // namespace coxdef
