#include "coxdef/andreev.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <boost/rational.hpp>

#include "coxdef/error.hpp"

namespace coxdef {

using Q = boost::rational<long long>;

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::A1: return "A1";
    case Condition::A2: return "A2";
    case Condition::A3: return "A3";
    case Condition::A4: return "A4";
    case Condition::TA1: return "~A1";
    case Condition::TA2: return "~A2";
    case Condition::TA3: return "~A3";
    case Condition::TA4: return "~A4";
    case Condition::TA5: return "~A5";
    case Condition::TA6: return "~A6";
  }
  return "?";
}

namespace {

// Angle pi/n expressed in units of pi.
Q theta(int n) { return Q(1, n); }

Q circuit_sum(const Polyhedron& P, const Labeling& L, const std::vector<int>& c) {
  Q s = 0;
  for (size_t t = 0; t < c.size(); ++t) s += theta(L[P.edge(c[t], c[(t + 1) % c.size()])]);
  return s;
}

bool is_triangular_prism(const Polyhedron& P) {
  if (P.num_faces() != 5 || P.num_edges() != 9) return false;
  int tri = 0;
  for (const auto& c : P.cycles) tri += c.size() == 3;
  return tri == 2;
}

// Shared (A2)-(A4) checks, with tags depending on the variant.
void circuit_conditions(const Polyhedron& P, const Labeling& L, AndreevVerdict& v, bool tilde) {
  for (const auto& c : prismatic_circuits(P, 3))
    if (circuit_sum(P, L, c) >= 1) v.violations.push_back({tilde ? Condition::TA3 : Condition::A2, c});
  for (const auto& c : prismatic_circuits(P, 4))
    if (circuit_sum(P, L, c) >= 2) v.violations.push_back({tilde ? Condition::TA4 : Condition::A3, c});
  if (is_triangular_prism(P)) {
    Q s = 0;
    std::vector<int> tri;
    for (int i = 0; i < 5; ++i)
      if (P.cycles[i].size() == 3) tri.push_back(i);
    for (int t : tri)
      for (int nb : P.cycles[t]) s += theta(L[P.edge(t, nb)]);
    if (s >= 3) v.violations.push_back({tilde ? Condition::TA5 : Condition::A4, tri});
  }
}

void check_angles(const Polyhedron& P, const Labeling& L) {
  check_labeling(P, L);
  if (P.is_tetrahedron()) throw Error(ErrorKind::TetrahedronUnsupported, "Andreev's conditions exclude the tetrahedron");
}

}  // namespace

AndreevVerdict check_compact(const Polyhedron& P, const Labeling& L) {
  check_angles(P, L);
  if (!P.trivalent()) throw Error(ErrorKind::NonTrivalentVertex, "compact polyhedra have trivalent vertices");
  AndreevVerdict v;
  for (const auto& vx : P.vertices) {
    Q s = 0;
    for (size_t t = 0; t < 3; ++t) s += theta(L[P.edge(vx[t], vx[(t + 1) % 3])]);
    if (s <= 1) v.violations.push_back({Condition::A1, vx});
  }
  circuit_conditions(P, L, v, false);
  v.admissible = v.violations.empty();
  return v;
}

AndreevVerdict check_finite_volume(const Polyhedron& P, const Labeling& L) {
  check_angles(P, L);
  AndreevVerdict v;
  for (const auto& vx : P.vertices) {
    Q s = 0;
    for (size_t t = 0; t < vx.size(); ++t) s += theta(L[P.edge(vx[t], vx[(t + 1) % vx.size()])]);
    if (vx.size() == 3 && s < 1) v.violations.push_back({Condition::TA1, vx});
    if (vx.size() == 4 && s != 2) v.violations.push_back({Condition::TA2, vx});
    if (vx.size() > 4) v.violations.push_back({Condition::TA2, vx});
  }
  circuit_conditions(P, L, v, true);
  if (!P.trivalent()) {
    // Faces i, k not adjacent but sharing a vertex outside a common neighbour j.
    int f = P.num_faces();
    for (int j = 0; j < f; ++j)
      for (int i : P.cycles[j])
        for (int k : P.cycles[j]) {
          if (i >= k || P.adjacent(i, k)) continue;
          bool meet = false;
          for (const auto& vx : P.vertices) {
            bool hi = false, hk = false, hj = false;
            for (int x : vx) {
              hi |= x == i;
              hk |= x == k;
              hj |= x == j;
            }
            meet |= hi && hk && !hj;
          }
          if (meet && theta(L[P.edge(i, j)]) + theta(L[P.edge(j, k)]) >= 1)
            v.violations.push_back({Condition::TA6, {i, j, k}});
        }
  }
  v.admissible = v.violations.empty();
  return v;
}

Labeling canonical_representative(const SymmetryGroup& G, const Labeling& L) {
  std::optional<Labeling> pref, any;
  for (const auto& m : G.edge_maps) {
    Labeling t = transport(m, L);
    if (!any || t < *any) any = t;
    if (t.size() >= 2 && t[0] == 2 && t[1] == 3 && (!pref || t < *pref)) pref = t;
  }
  return pref ? *pref : *any;
}

std::vector<Labeling> enumerate_labelings(const Polyhedron& P, const EnumerationOptions& opt,
                                          const SymmetryGroup& G) {
  for (int n : opt.orders)
    if (n < 2) throw Error(ErrorKind::Precondition, "edge orders must be >= 2");
  if (opt.mode == Mode::Compact && !P.trivalent())
    throw Error(ErrorKind::NonTrivalentVertex, "compact enumeration needs trivalent vertices");
  int e = P.num_edges(), f = P.num_faces();
  std::vector<int> orders = opt.orders;
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

  // Vertices become checkable once their last edge (in numbering order) is set.
  std::vector<std::vector<int>> closes(e);
  for (int vi = 0; vi < P.num_vertices(); ++vi) {
    int last = *std::max_element(P.vertex_edges[vi].begin(), P.vertex_edges[vi].end());
    closes[last].push_back(vi);
  }
  Labeling L(e, 0);
  std::vector<int> right(f, 0);
  std::set<Labeling> reps;
  auto vertex_ok = [&](int vi) {
    const auto& ve = P.vertex_edges[vi];
    Q s = 0;
    for (int ed : ve) s += theta(L[ed]);
    if (ve.size() == 3) return opt.mode == Mode::Compact ? s > 1 : s >= 1;
    if (ve.size() == 4) return opt.mode == Mode::FiniteVolume && s == 2;
    return false;
  };
  std::function<void(int)> rec = [&](int k) {
    if (k == e) {
      auto v = opt.mode == Mode::Compact ? check_compact(P, L) : check_finite_volume(P, L);
      if (v.admissible) reps.insert(canonical_representative(G, L));
      return;
    }
    auto [a, b] = P.edges[k];
    for (int n : orders) {
      L[k] = n;
      if (n == 2) {
        ++right[a];
        ++right[b];
      }
      bool ok = true;
      if (opt.max_right_angles_per_face && n == 2)
        ok = right[a] <= *opt.max_right_angles_per_face && right[b] <= *opt.max_right_angles_per_face;
      for (size_t t = 0; ok && t < closes[k].size(); ++t) ok = vertex_ok(closes[k][t]);
      if (ok) rec(k + 1);
      if (n == 2) {
        --right[a];
        --right[b];
      }
    }
    L[k] = 0;
  };
  if (!P.is_tetrahedron()) rec(0);
  return {reps.begin(), reps.end()};
}

}  // namespace coxdef
