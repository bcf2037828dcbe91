// Closed-form normals of cu21 and cu27 and their exact Vinberg systems.
#include <functional>

#include "coxdef/error.hpp"
#include "coxdef/groebner.hpp"
#include "coxdef/vinberg.hpp"

namespace coxdef {

namespace {

using E4 = std::array<FieldElem, 4>;

struct Spec {
  std::string name;
  std::string labeling;          // canonical string on the catalog cube
  std::array<int, 6> fig_label;  // catalog face (C, L, B, R, T, O) -> label
  std::array<int, 6> var_faces;  // labels, greatest variables first
  bool slow = false;
  bool radical = false;
  std::function<std::shared_ptr<Field>()> make_field;
  std::function<std::vector<E4>(const Field&)> normals;
  // (lhs, rhs) entries (multiplier variable, scalar, generator index)
  struct Entry {
    std::string var;
    Rational scalar;
    int gen;
  };
  std::vector<std::pair<std::vector<Entry>, std::vector<Entry>>> syz;
  std::vector<std::string> syz_text;
};

FieldElem q(const Field& F, long long a, long long b = 1) { return F.from_rational(Rational(a, b)); }

std::vector<Spec> specs() {
  std::vector<Spec> out;
  {
    Spec s;
    s.name = "cu21";
    s.labeling = "232232232323";
    s.fig_label = {2, 5, 6, 3, 1, 4};
    s.var_faces = {4, 5, 6, 1, 2, 3};
    s.make_field = [] {
      auto F = std::make_shared<Field>();
      F->adjoin_sqrt("s5", F->from_rational(5));
      F->adjoin_sqrt("s2", F->from_rational(2));
      F->adjoin_sqrt("s3", F->from_rational(3));
      return F;
    };
    s.normals = [](const Field& F) {
      FieldElem s5 = F.generator(0), s2 = F.generator(1), s3 = F.generator(2);
      FieldElem half_s5 = F.scale(s5, Rational(1, 2));
      FieldElem z = F.zero();
      return std::vector<E4>{
          {z, q(F, 1), z, z},
          {z, z, q(F, 1), z},
          {z, z, q(F, -1, 2), F.scale(s3, Rational(1, 2))},
          {half_s5, q(F, -1, 2), F.scale(F.mul(s2, s3), Rational(-1, 2)), F.scale(s2, Rational(-1, 2))},
          {half_s5, q(F, -1, 2), z, F.neg(s2)},
          {half_s5, q(F, -3, 2), z, z},
      };
    };
    // c62 f2 + c11 f3 = c52 f1; the first generator carries leading
    // coefficient 2 in that normalization.
    s.syz = {{{{"c52", 2, 0}}, {{"c62", 1, 1}, {"c11", 1, 2}}}};
    s.syz_text = {"c62*f2 + c11*f3 = c52*f1"};
    out.push_back(s);
  }
  {
    Spec s;
    s.name = "cu27";
    s.labeling = "232233332323";
    s.fig_label = {1, 3, 4, 5, 2, 6};
    s.var_faces = {2, 4, 5, 6, 3, 1};
    s.slow = true;
    s.radical = true;
    s.make_field = [] {
      auto F = std::make_shared<Field>();
      F->adjoin_root("th", {64, 0, -384, 0, -208, 0, 320, 0, -52, 0, -24, 0}, Rational(-3957, 10000),
                     Rational(-3955, 10000));
      return F;
    };
    s.normals = [](const Field& F) {
      FieldElem t = F.generator(0);
      auto poly = [&](std::vector<std::pair<int, Rational>> terms) {
        FieldElem acc = F.zero();
        for (auto& [e, c] : terms) {
          FieldElem p = F.one();
          for (int k = 0; k < e; ++k) p = F.mul(p, t);
          acc = F.add(acc, F.scale(p, c));
        }
        return acc;
      };
      using R = Rational;
      FieldElem u = poly({{1, R(13, 4)}, {3, R(13, 8)}, {5, R(-5, 2)}, {7, R(13, 32)}, {9, R(3, 16)}, {11, R(-1, 128)}});
      FieldElem v = poly({{0, R(-47, 32)}, {2, R(-1, 16)}, {4, R(73, 64)}, {6, R(-1, 4)}, {8, R(-47, 512)},
                          {10, R(1, 256)}});
      FieldElem w = poly({{0, R(-1)}, {2, R(-7, 8)}, {4, R(5, 4)}, {6, R(-13, 64)}, {8, R(-3, 32)}, {10, R(1, 256)}});
      FieldElem x = poly({{1, R(-169, 64)}, {3, R(-45, 128)}, {5, R(195, 128)}, {7, R(-89, 256)}, {9, R(-129, 1024)},
                          {11, R(11, 2048)}});
      FieldElem y = poly({{1, R(-11, 4)}, {3, R(-13, 8)}, {5, R(5, 2)}, {7, R(-13, 32)}, {9, R(-3, 16)}, {11, R(1, 128)}});
      FieldElem z = poly({{1, R(-35, 32)}, {3, R(-55, 64)}, {5, R(9, 8)}, {7, R(-7, 64)}, {9, R(-37, 512)},
                          {11, R(3, 1024)}});
      FieldElem o = F.zero();
      return std::vector<E4>{
          {o, o, o, q(F, 1)},
          {x, q(F, -1, 2), F.neg(u), o},
          {o, q(F, 1), o, o},
          {x, q(F, -1, 2), u, o},
          {y, v, o, q(F, -1, 2)},
          {z, o, o, w},
      };
    };
    // c23 f1 + c43 f2 = c33 f3; the third generator carries leading
    // coefficient 2 in that normalization.
    s.syz = {{{{"c33", 2, 2}}, {{"c23", 1, 0}, {"c43", 1, 1}}}};
    s.syz_text = {"c23*f1 + c43*f2 = c33*f3"};
    out.push_back(s);
  }
  return out;
}

FieldElem lorentz(const Field& F, const E4& a, const E4& b) {
  FieldElem s = F.neg(F.mul(a[0], b[0]));
  for (int k = 1; k < 4; ++k) s = F.add(s, F.mul(a[k], b[k]));
  return s;
}

}  // namespace

std::vector<std::string> exact_system_names() { return {"cu21", "cu27"}; }

std::optional<ExactSystem> exact_system(const Polyhedron& P, const Labeling& L) {
  Polyhedron C = cube();
  if (P.num_faces() != 6 || P.cycles != C.cycles || P.edges != C.edges) return std::nullopt;
  auto G = symmetry_group(C);
  for (const auto& s : specs()) {
    Labeling target = parse_labeling(s.labeling);
    int which = -1;
    for (int g = 0; g < G.size() && which < 0; ++g)
      if (transport(G.edge_maps[g], L) == target) which = g;
    if (which < 0) continue;
    ExactSystem X;
    X.name = s.name;
    X.slow = s.slow;
    X.needs_radical = s.radical;
    X.field = s.make_field();
    const Field& F = *X.field;
    X.normals = s.normals(F);
    for (int f = 0; f < 6; ++f) X.face_label.push_back(s.fig_label[G.elements[which][f]]);
    // The closed forms must realize the labeling exactly.
    for (int i = 0; i < 6; ++i) {
      if (!F.is_one(lorentz(F, X.normals[i], X.normals[i])))
        throw Error(ErrorKind::CheckFailed, s.name + ": normal is not a unit vector");
    }
    for (int e = 0; e < P.num_edges(); ++e) {
      auto [a, b] = P.edges[e];
      FieldElem g = lorentz(F, X.normals[X.face_label[a] - 1], X.normals[X.face_label[b] - 1]);
      Rational want = L[e] == 2 ? Rational(0) : Rational(-1, 2);
      if (L[e] > 3) throw Error(ErrorKind::Precondition, "exact data covers orders 2 and 3");
      if (!(g == F.from_rational(want))) throw Error(ErrorKind::CheckFailed, s.name + ": Gram entry mismatch");
    }
    std::vector<std::string> vars;
    for (int lab : s.var_faces)
      for (int k = 1; k <= 4; ++k) vars.push_back("c" + std::to_string(lab) + std::to_string(k));
    X.ring = std::make_shared<PolyRing>(X.field, vars);
    const PolyRing& R = *X.ring;
    // alpha_i(c_j) as a linear polynomial; alpha_i = J nu_i.
    auto alpha_c = [&](int i, int j) {
      const E4& nu = X.normals[X.face_label[i] - 1];
      MultiPoly p;
      for (int k = 0; k < 4; ++k) {
        FieldElem c = k == 0 ? F.neg(nu[0]) : nu[k];
        std::string v = "c" + std::to_string(X.face_label[j]) + std::to_string(k + 1);
        p = R.add(p, R.scale(R.var(v), c));
      }
      return p;
    };
    auto a_t = [&](int i, int j) {  // alpha_i(2 nu_j)
      return F.scale(lorentz(F, X.normals[X.face_label[i] - 1], X.normals[X.face_label[j] - 1]), 2);
    };
    for (const auto& eq : vinberg_equations(P, L)) {
      switch (eq.kind) {
        case EquationKind::Normalize: X.equations.push_back(alpha_c(eq.i, eq.i)); break;
        case EquationKind::Zero1: X.equations.push_back(alpha_c(eq.i, eq.j)); break;
        case EquationKind::Zero2: X.equations.push_back(alpha_c(eq.j, eq.i)); break;
        case EquationKind::Product: {
          MultiPoly cij = alpha_c(eq.i, eq.j), cji = alpha_c(eq.j, eq.i);
          MultiPoly p = R.add(R.scale(cji, a_t(eq.i, eq.j)), R.scale(cij, a_t(eq.j, eq.i)));
          X.equations.push_back(R.add(p, R.mul(cij, cji)));
          break;
        }
      }
    }
    for (size_t k = 0; k < s.syz.size(); ++k) {
      SyzygySpec sp;
      sp.text = s.syz_text[k];
      for (const auto& en : s.syz[k].first) sp.lhs.push_back({R.scale(R.var(en.var), F.from_rational(en.scalar)), en.gen});
      for (const auto& en : s.syz[k].second)
        sp.rhs.push_back({R.scale(R.var(en.var), F.from_rational(en.scalar)), en.gen});
      X.syzygies.push_back(sp);
    }
    return X;
  }
  return std::nullopt;
}

ExactVerdict exact_local_dimension(const ExactSystem& S, const ExactOptions& opt) {
  const PolyRing& R = *S.ring;
  ExactVerdict v;
  v.field_description = R.field().describe();
  v.basis = buchberger(R, S.equations, opt.groebner);
  for (;;) {
    bool changed = false;
    auto gens = radical_step(R, v.basis.generators, &changed);
    if (!changed) break;
    ++v.radical_steps;
    // Same real solution set: the root vanishes wherever its square does.
    std::vector<MultiPoly> all = gens;
    v.basis = buchberger(R, all, opt.groebner);
  }
  v.analysis = analyze_basis(R, v.basis.generators, S.syzygies);
  v.A = v.analysis.local_dimension;
  for (int f : v.analysis.free_vars) v.free_variables.push_back(R.vars()[f]);
  return v;
}

std::optional<ExactVerdict> exact_local_dimension(const Polyhedron& P, const Labeling& L, const ExactOptions& opt) {
  auto S = exact_system(P, L);
  if (!S) return std::nullopt;
  if (S->slow && !opt.allow_slow) return std::nullopt;
  return exact_local_dimension(*S, opt);
}

}  // namespace coxdef
