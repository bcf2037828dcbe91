#include "coxdef/rigidity.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "coxdef/andreev.hpp"
#include "coxdef/error.hpp"

namespace coxdef {

LinearTestResult linear_test(const Polyhedron& P, const Labeling& L) {
  check_labeling(P, L);
  const int f = P.num_faces();
  LinearTestResult r;
  r.level.assign(f, 0);
  for (int k = 1;; ++k) {
    std::vector<int> fresh;
    for (int i = 0; i < f; ++i) {
      if (r.level[i]) continue;
      int constraints = 0;
      for (int nb : P.cycles[i]) {
        bool by_order = L[P.edge(i, nb)] == 2;
        bool by_rigid = r.level[nb] > 0 && r.level[nb] < k;
        constraints += by_order || by_rigid;
      }
      if (constraints >= 3) fresh.push_back(i);
    }
    if (fresh.empty()) break;
    for (int i : fresh) r.level[i] = k;
    r.max_level = k;
  }
  for (int i = 0; i < f; ++i)
    if (!r.level[i]) r.stalled_faces.push_back(i);
  r.rigid = r.stalled_faces.empty();
  return r;
}

namespace {

int constrained_edges(const Polyhedron& P, const Labeling& L, int face, const std::vector<char>& lower) {
  int n = 0;
  for (int nb : P.cycles[face]) n += L[P.edge(face, nb)] == 2 || !lower[nb];
  return n;
}

}  // namespace

bool is_valid_ordering(const Polyhedron& P, const Labeling& L, const std::vector<int>& order) {
  const int f = P.num_faces();
  if (static_cast<int>(order.size()) != f) return false;
  std::vector<int> rank(f, -1);
  for (int k = 0; k < f; ++k) {
    if (order[k] < 0 || order[k] >= f || rank[order[k]] >= 0) return false;
    rank[order[k]] = k;
  }
  for (int i = 0; i < f; ++i) {
    int n = 0;
    for (int nb : P.cycles[i]) n += L[P.edge(i, nb)] == 2 || rank[nb] > rank[i];
    if (n > 3) return false;
  }
  return true;
}

OrderabilityResult orderability_test(const Polyhedron& P, const Labeling& L) {
  check_labeling(P, L);
  const int f = P.num_faces();
  std::vector<char> placed(f, 0);
  OrderabilityResult r;
  for (int step = 0; step < f; ++step) {
    int pick = -1;
    for (int i = 0; i < f && pick < 0; ++i)
      if (!placed[i] && constrained_edges(P, L, i, placed) <= 3) pick = i;
    if (pick < 0) return r;
    placed[pick] = 1;
    r.order.push_back(pick);
  }
  r.orderable = true;
  return r;
}

bool is_cone_type(const Polyhedron& P, const Labeling& L) {
  const int f = P.num_faces();
  for (const auto& vx : P.vertices) {
    if (static_cast<int>(vx.size()) != f - 1) continue;
    int base = -1;
    for (int i = 0; i < f; ++i)
      if (std::find(vx.begin(), vx.end(), i) == vx.end()) base = i;
    bool all2 = true;
    for (int e : P.face_edges[base]) all2 &= L[e] == 2;
    if (all2) return true;
  }
  return false;
}

bool is_product_type(const Polyhedron& P, const Labeling& L) {
  const int f = P.num_faces();
  const int n = f - 2;
  if (n < 3 || P.num_edges() != 3 * n) return false;
  for (int top = 0; top < f; ++top)
    for (int bot = top + 1; bot < f; ++bot) {
      if (static_cast<int>(P.cycles[top].size()) != n || static_cast<int>(P.cycles[bot].size()) != n) continue;
      if (P.adjacent(top, bot)) continue;
      bool band = true;
      for (int s : P.cycles[top]) band &= P.adjacent(s, bot) && P.cycles[s].size() == 4;
      if (!band) continue;
      bool all2 = true;
      for (int e : P.face_edges[top]) all2 &= L[e] == 2;
      for (int e : P.face_edges[bot]) all2 &= L[e] == 2;
      if (all2) return true;
    }
  return false;
}

bool has_finite_group(const Polyhedron& P, const Labeling& L) {
  if (!P.is_tetrahedron()) return false;
  Eigen::Matrix4d C = Eigen::Matrix4d::Identity();
  for (int e = 0; e < P.num_edges(); ++e) {
    auto [i, j] = P.edges[e];
    C(i, j) = C(j, i) = -std::cos(M_PI / L[e]);
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(C).eigenvalues().minCoeff() > 1e-12;
}

int choi_dimension(const Polyhedron& P, const Labeling& L) {
  if (!orderability_test(P, L).orderable) throw Error(ErrorKind::NotOrderable, "orbifold is not orderable");
  if (is_cone_type(P, L)) throw Error(ErrorKind::NotNormalType, "cone-type orbifold");
  if (is_product_type(P, L)) throw Error(ErrorKind::NotNormalType, "product-type orbifold");
  if (has_finite_group(P, L)) throw Error(ErrorKind::NotNormalType, "finite fundamental group");
  auto c = counts(P, L);
  return c.O - automorphism_dim(P);
}

std::optional<std::string> orderable_rigidity_shortcut(const Polyhedron& P, const Labeling& L) {
  if (!P.is_tetrahedron() && (!P.trivalent() || !check_compact(P, L).admissible))
    throw Error(ErrorKind::Precondition, "labeling is not compact hyperbolic");
  if (!orderability_test(P, L).orderable) throw Error(ErrorKind::NotOrderable, "orbifold is not orderable");
  if (P.num_faces() > 7) return std::string("rigid rel mirrors");
  return std::nullopt;
}

}  // namespace coxdef
