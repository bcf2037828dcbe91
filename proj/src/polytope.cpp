#include "coxdef/polytope.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "coxdef/error.hpp"

namespace coxdef {

bool Polyhedron::trivalent() const {
  for (const auto& v : vertices)
    if (v.size() != 3) return false;
  return true;
}

namespace {

int position(const std::vector<int>& cyc, int x) {
  auto it = std::find(cyc.begin(), cyc.end(), x);
  return it == cyc.end() ? -1 : static_cast<int>(it - cyc.begin());
}

// Dual faces of the rotation system given by the cycles; each orbit of darts
// (i -> a) under (i -> a) |-> (a -> succ_a(i)) is one vertex.
std::vector<std::vector<int>> trace_vertices(const std::vector<std::vector<int>>& cyc) {
  int f = static_cast<int>(cyc.size());
  std::set<std::pair<int, int>> seen;
  std::vector<std::vector<int>> out;
  for (int i = 0; i < f; ++i) {
    for (int a : cyc[i]) {
      if (seen.count({i, a})) continue;
      std::vector<int> orbit;
      int x = i, y = a;
      while (!seen.count({x, y})) {
        seen.insert({x, y});
        orbit.push_back(x);
        const auto& cy = cyc[y];
        int p = position(cy, x);
        int nx = y, ny = cy[(p + 1) % cy.size()];
        x = nx;
        y = ny;
      }
      out.push_back(orbit);
    }
  }
  return out;
}

}  // namespace

Polyhedron build_polyhedron(const std::vector<std::vector<int>>& cycles_in,
                            const std::vector<std::array<int, 2>>& edge_order,
                            const std::string& name) {
  Polyhedron P;
  P.name = name;
  auto cyc = cycles_in;
  int f = static_cast<int>(cyc.size());
  if (f < 4) throw Error(ErrorKind::NonPolyhedral, "fewer than four faces");
  for (int i = 0; i < f; ++i) {
    if (cyc[i].size() < 3) throw Error(ErrorKind::NonPolyhedral, "face with fewer than three edges");
    std::set<int> s;
    for (int a : cyc[i]) {
      if (a < 0 || a >= f || a == i) throw Error(ErrorKind::NonPolyhedral, "bad neighbour id");
      if (!s.insert(a).second)
        throw Error(ErrorKind::NonPolyhedral, "faces share more than one edge");
    }
  }
  P.edge_of.assign(f, std::vector<int>(f, -1));
  for (int i = 0; i < f; ++i)
    for (int a : cyc[i])
      if (position(cyc[a], i) < 0) throw Error(ErrorKind::NonPolyhedral, "dangling edge");

  if (!edge_order.empty()) {
    for (auto e : edge_order) {
      int i = std::min(e[0], e[1]), j = std::max(e[0], e[1]);
      if (i < 0 || j >= f || position(cyc[i], j) < 0)
        throw Error(ErrorKind::NonPolyhedral, "edge order names non-adjacent faces");
      if (P.edge_of[i][j] >= 0) throw Error(ErrorKind::NonPolyhedral, "edge listed twice");
      P.edge_of[i][j] = P.edge_of[j][i] = P.num_edges();
      P.edges.push_back({i, j});
    }
  }
  for (int i = 0; i < f; ++i)
    for (int a : cyc[i])
      if (P.edge_of[i][a] < 0) {
        if (!edge_order.empty()) throw Error(ErrorKind::NonPolyhedral, "edge order incomplete");
        P.edge_of[i][a] = P.edge_of[a][i] = P.num_edges();
        P.edges.push_back({std::min(i, a), std::max(i, a)});
      }
  int e = P.num_edges();
  int want_v = 2 - f + e;

  // Orient the cycles consistently. Across an edge (i, a) the face before i
  // around a must share a vertex with the face after a around i; orient by
  // breadth-first search, then fall back to local flips.
  {
    auto adjacent = [&](int x, int y) { return x == y || position(cyc[x], y) >= 0; };
    auto score = [&](int a, const std::vector<char>& done) {
      int sc = 0;
      const auto& ca = cyc[a];
      for (size_t k = 0; k < ca.size(); ++k) {
        int i = ca[k];
        if (!done[i]) continue;
        const auto& ci = cyc[i];
        int pa = ca[(k + ca.size() - 1) % ca.size()];
        int si = ci[(position(ci, a) + 1) % ci.size()];
        sc += adjacent(pa, si) ? 1 : -1;
      }
      return sc;
    };
    std::vector<char> done(f, 0);
    std::vector<int> queue{0};
    done[0] = 1;
    for (size_t q = 0; q < queue.size(); ++q)
      for (int a : cyc[queue[q]]) {
        if (done[a]) continue;
        int s1 = score(a, done);
        std::reverse(cyc[a].begin(), cyc[a].end());
        if (score(a, done) <= s1) std::reverse(cyc[a].begin(), cyc[a].end());
        done[a] = 1;
        queue.push_back(a);
      }
  }
  auto best = trace_vertices(cyc);
  for (int pass = 0; pass < 2 * f && static_cast<int>(best.size()) != want_v; ++pass) {
    bool improved = false;
    for (int i = 0; i < f; ++i) {
      std::reverse(cyc[i].begin(), cyc[i].end());
      auto t = trace_vertices(cyc);
      if (t.size() > best.size()) {
        best = std::move(t);
        improved = true;
      } else {
        std::reverse(cyc[i].begin(), cyc[i].end());
      }
    }
    if (!improved) break;
  }
  if (static_cast<int>(best.size()) != want_v)
    throw Error(ErrorKind::NonPolyhedral, "Euler relation fails (v - e + f != 2)");
  for (auto& v : best) {
    if (v.size() < 3) throw Error(ErrorKind::NonPolyhedral, "vertex of degree < 3");
    std::set<int> s(v.begin(), v.end());
    if (s.size() != v.size()) throw Error(ErrorKind::NonPolyhedral, "face repeated around a vertex");
  }
  // Deterministic vertex order: rotate each so the smallest face comes first,
  // then sort.
  for (auto& v : best) std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
  std::sort(best.begin(), best.end());
  P.cycles = cyc;
  P.vertices = best;

  P.face_edges.resize(f);
  for (int i = 0; i < f; ++i)
    for (int a : cyc[i]) P.face_edges[i].push_back(P.edge_of[i][a]);
  P.edge_ends.assign(e, {-1, -1});
  for (int vi = 0; vi < P.num_vertices(); ++vi) {
    const auto& v = P.vertices[vi];
    std::vector<int> es;
    for (size_t k = 0; k < v.size(); ++k) {
      int ed = P.edge_of[v[k]][v[(k + 1) % v.size()]];
      if (ed < 0) throw Error(ErrorKind::NonPolyhedral, "inconsistent vertex cycle");
      es.push_back(ed);
      auto& ends = P.edge_ends[ed];
      if (ends[0] < 0) ends[0] = vi;
      else if (ends[1] < 0) ends[1] = vi;
      else throw Error(ErrorKind::NonPolyhedral, "edge with more than two vertices");
    }
    P.vertex_edges.push_back(es);
  }
  for (auto& ends : P.edge_ends)
    if (ends[1] < 0) throw Error(ErrorKind::NonPolyhedral, "edge with fewer than two vertices");
  return P;
}

Polyhedron read_face_cycles(std::istream& in, const std::string& name) {
  std::vector<std::vector<int>> cyc;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<int> c;
    int x;
    while (ls >> x) c.push_back(x);
    if (!c.empty()) cyc.push_back(c);
  }
  return build_polyhedron(cyc, {}, name);
}

Counts counts(const Polyhedron& P, const Labeling& L) {
  check_labeling(P, L);
  Counts c;
  c.f = P.num_faces();
  c.e = P.num_edges();
  c.v = P.num_vertices();
  c.e2 = static_cast<int>(std::count(L.begin(), L.end(), 2));
  c.O = 3 * c.f - c.e - c.e2;
  return c;
}

std::vector<std::vector<int>> prismatic_circuits(const Polyhedron& P, int k) {
  std::vector<std::vector<int>> out;
  int f = P.num_faces();
  std::vector<int> path;
  std::vector<char> used(f, 0);
  std::function<void()> dfs = [&]() {
    int last = path.back();
    if (static_cast<int>(path.size()) == k) {
      if (!P.adjacent(last, path[0]) || path[1] > path.back()) return;
      std::set<int> ends;
      for (int t = 0; t < k; ++t) {
        int ed = P.edge(path[t], path[(t + 1) % k]);
        ends.insert(P.edge_ends[ed][0]);
        ends.insert(P.edge_ends[ed][1]);
      }
      if (static_cast<int>(ends.size()) == 2 * k) out.push_back(path);
      return;
    }
    for (int nb : P.cycles[last]) {
      if (used[nb] || nb < path[0]) continue;
      used[nb] = 1;
      path.push_back(nb);
      dfs();
      path.pop_back();
      used[nb] = 0;
    }
  };
  for (int s = 0; s < f; ++s) {
    path = {s};
    used.assign(f, 0);
    used[s] = 1;
    dfs();
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> edge_permutation(const Polyhedron& P, const std::vector<int>& g) {
  std::vector<int> m(P.num_edges());
  for (int e = 0; e < P.num_edges(); ++e) m[e] = P.edge(g[P.edges[e][0]], g[P.edges[e][1]]);
  return m;
}

Labeling transport(const std::vector<int>& edge_map, const Labeling& L) {
  Labeling out(L.size());
  for (size_t e = 0; e < L.size(); ++e) out[edge_map[e]] = L[e];
  return out;
}

SymmetryGroup symmetry_group(const Polyhedron& P) {
  int f = P.num_faces();
  // BFS order with parents so every later face has an already-mapped neighbour.
  std::vector<int> order{0}, parent(f, -1);
  std::vector<char> seen(f, 0);
  seen[0] = 1;
  for (size_t h = 0; h < order.size(); ++h)
    for (int nb : P.cycles[order[h]])
      if (!seen[nb]) {
        seen[nb] = 1;
        parent[nb] = order[h];
        order.push_back(nb);
      }
  std::set<std::vector<int>> vsets;
  for (auto v : P.vertices) {
    std::sort(v.begin(), v.end());
    vsets.insert(v);
  }
  SymmetryGroup G;
  std::vector<int> img(f, -1);
  std::vector<char> taken(f, 0);
  std::function<void(size_t)> rec = [&](size_t h) {
    if (h == order.size()) {
      for (const auto& v : vsets) {
        std::vector<int> w;
        for (int x : v) w.push_back(img[x]);
        std::sort(w.begin(), w.end());
        if (!vsets.count(w)) return;
      }
      G.elements.push_back(img);
      return;
    }
    int x = order[h];
    std::vector<int> cand;
    if (parent[x] < 0) {
      cand.resize(f);
      std::iota(cand.begin(), cand.end(), 0);
    } else {
      cand = P.cycles[img[parent[x]]];
    }
    for (int y : cand) {
      if (taken[y] || P.cycles[y].size() != P.cycles[x].size()) continue;
      bool ok = true;
      for (size_t t = 0; t < h && ok; ++t) {
        int z = order[t];
        ok = P.adjacent(x, z) == P.adjacent(y, img[z]);
      }
      if (!ok) continue;
      img[x] = y;
      taken[y] = 1;
      rec(h + 1);
      taken[y] = 0;
      img[x] = -1;
    }
  };
  rec(0);
  std::sort(G.elements.begin(), G.elements.end());
  for (const auto& g : G.elements) G.edge_maps.push_back(edge_permutation(P, g));
  return G;
}

int automorphism_dim(const Polyhedron& P) {
  if (P.is_tetrahedron()) return 3;
  int f = P.num_faces();
  for (const auto& v : P.vertices)
    if (static_cast<int>(v.size()) == f - 1 && f - 1 > 3) return 1;
  return 0;
}

std::vector<VertexKind> classify_vertices(const Polyhedron& P, const Labeling& L) {
  check_labeling(P, L);
  std::vector<VertexKind> out;
  for (const auto& ve : P.vertex_edges) {
    if (ve.size() != 3) throw Error(ErrorKind::NonTrivalentVertex, "vertex of degree " + std::to_string(ve.size()));
    long long a = L[ve[0]], b = L[ve[1]], c = L[ve[2]];
    long long lhs = b * c + a * c + a * b, rhs = a * b * c;  // sum 1/n against 1
    out.push_back(lhs > rhs ? VertexKind::Finite : lhs == rhs ? VertexKind::Ideal : VertexKind::Hyperinfinite);
  }
  return out;
}

std::string labeling_string(const Labeling& L, bool spaced) {
  bool small = std::all_of(L.begin(), L.end(), [](int n) { return n < 10; });
  std::string s;
  for (size_t e = 0; e < L.size(); ++e) {
    if ((spaced || !small) && e) s += ' ';
    s += std::to_string(L[e]);
  }
  return s;
}

Labeling parse_labeling(const std::string& s) {
  Labeling L;
  bool sep = s.find_first_of(" ,") != std::string::npos;
  if (sep) {
    std::string t = s;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    int x;
    while (in >> x) L.push_back(x);
  } else {
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw Error(ErrorKind::Precondition, "bad labeling string '" + s + "'");
      L.push_back(ch - '0');
    }
  }
  return L;
}

void check_labeling(const Polyhedron& P, const Labeling& L) {
  if (static_cast<int>(L.size()) != P.num_edges())
    throw Error(ErrorKind::Precondition, "labeling has " + std::to_string(L.size()) + " orders for " +
                                             std::to_string(P.num_edges()) + " edges");
  for (int n : L)
    if (n < 2) throw Error(ErrorKind::Precondition, "edge order below 2");
}

}  // namespace coxdef
