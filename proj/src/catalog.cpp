#include <algorithm>
#include <map>

#include "coxdef/error.hpp"
#include "coxdef/polytope.hpp"

namespace coxdef {

namespace {

// Faces given as cyclic lists of 1-based edge numbers; returns the neighbour
// cycles and the edge list in numbering order.
Polyhedron from_edge_cycles(const std::vector<std::vector<int>>& face_edges, const std::string& name) {
  int f = static_cast<int>(face_edges.size());
  std::map<int, std::vector<int>> owners;
  for (int i = 0; i < f; ++i)
    for (int e : face_edges[i]) owners[e].push_back(i);
  std::vector<std::array<int, 2>> edges;
  for (auto& [num, fs] : owners) {
    if (fs.size() != 2) throw Error(ErrorKind::NonPolyhedral, "catalog edge not in two faces");
    edges.push_back({std::min(fs[0], fs[1]), std::max(fs[0], fs[1])});
  }
  std::vector<std::vector<int>> cyc(f);
  for (int i = 0; i < f; ++i)
    for (int e : face_edges[i]) {
      const auto& fs = owners[e];
      cyc[i].push_back(fs[0] == i ? fs[1] : fs[0]);
    }
  return build_polyhedron(cyc, edges, name);
}

}  // namespace

// Faces F1..F6 = centre, left, bottom, right, top, outer of the planar diagram;
// e1..e4 bound the centre, e5..e8 are the diagonals, e9..e12 bound the outer face.
Polyhedron cube() {
  return from_edge_cycles({{1, 2, 3, 4},
                           {4, 8, 9, 5},
                           {3, 7, 12, 8},
                           {2, 6, 11, 7},
                           {1, 5, 10, 6},
                           {12, 11, 10, 9}},
                          "cube");
}

// F1 centre pentagon, F2..F6 the inner ring, F7..F11 the outer ring, F12 outer.
Polyhedron dodecahedron() {
  return from_edge_cycles({{1, 2, 3, 4, 5},
                           {5, 6, 20, 15, 10},
                           {4, 10, 19, 14, 9},
                           {3, 9, 18, 13, 8},
                           {2, 8, 17, 12, 7},
                           {1, 7, 16, 11, 6},
                           {30, 25, 15, 19, 24},
                           {29, 24, 14, 18, 23},
                           {28, 23, 13, 17, 22},
                           {27, 22, 12, 16, 21},
                           {26, 21, 11, 20, 25},
                           {26, 27, 28, 29, 30}},
                          "dodecahedron");
}

// Side faces F1..Fn in cyclic order, F(n+1) the top (centre of the diagram),
// F(n+2) the bottom. Edges: top boundary, then side-side, then bottom boundary.
Polyhedron prism(int n) {
  if (n < 3) throw Error(ErrorKind::UnsupportedN, "prism needs n >= 3");
  int top = n, bot = n + 1;
  std::vector<std::vector<int>> cyc(n + 2);
  for (int k = 0; k < n; ++k) cyc[k] = {top, (k + 1) % n, bot, (k + n - 1) % n};
  for (int k = 0; k < n; ++k) cyc[top].push_back(k);
  for (int k = n - 1; k >= 0; --k) cyc[bot].push_back(k);
  std::vector<std::array<int, 2>> edges;
  for (int k = 0; k < n; ++k) edges.push_back({k, top});
  for (int k = 0; k < n; ++k) edges.push_back({std::min(k, (k + 1) % n), std::max(k, (k + 1) % n)});
  for (int k = 0; k < n; ++k) edges.push_back({k, bot});
  return build_polyhedron(cyc, edges, "prism" + std::to_string(n));
}

// Triangles F1, F2 and quadrilaterals F3, F4, F5; edges in lexicographic pair order.
Polyhedron triangular_prism_example() {
  std::vector<std::vector<int>> cyc = {{2, 3, 4}, {4, 3, 2}, {0, 4, 1, 3}, {0, 2, 1, 4}, {0, 3, 1, 2}};
  std::vector<std::array<int, 2>> edges = {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  return build_polyhedron(cyc, edges, "triprism");
}

Polyhedron tetrahedron() {
  std::vector<std::vector<int>> cyc = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
  std::vector<std::array<int, 2>> edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return build_polyhedron(cyc, edges, "tetrahedron");
}

// Up triangles 0..n-1, down triangles n..2n-1, top 2n, bottom 2n+1.
Polyhedron antiprism(int n) {
  if (n < 3) throw Error(ErrorKind::UnsupportedN, "antiprism needs n >= 3");
  int T = 2 * n, B = 2 * n + 1;
  auto U = [n](int k) { return ((k % n) + n) % n; };
  auto D = [n](int k) { return n + ((k % n) + n) % n; };
  std::vector<std::vector<int>> cyc(2 * n + 2);
  for (int k = 0; k < n; ++k) {
    cyc[U(k)] = {T, D(k), D(k - 1)};
    cyc[D(k)] = {B, U(k), U(k + 1)};
    cyc[T].push_back(U(k));
    cyc[B].push_back(D(n - 1 - k));
  }
  return build_polyhedron(cyc, {}, "antiprism" + std::to_string(n));
}

// Triangles 0..n-1 around the apex, base n.
Polyhedron pyramid(int n) {
  if (n < 3) throw Error(ErrorKind::UnsupportedN, "pyramid needs n >= 3");
  std::vector<std::vector<int>> cyc(n + 1);
  for (int k = 0; k < n; ++k) {
    cyc[k] = {n, (k + 1) % n, (k + n - 1) % n};
    cyc[n].push_back(n - 1 - k);
  }
  return build_polyhedron(cyc, {}, "pyramid" + std::to_string(n));
}

Polyhedron builtin(const std::string& name) {
  auto suffix = [&](const std::string& stem) -> int {
    if (name.rfind(stem, 0) != 0 || name.size() == stem.size()) return -1;
    try {
      return std::stoi(name.substr(stem.size()));
    } catch (...) {
      return -1;
    }
  };
  if (name == "cube") return cube();
  if (name == "dodecahedron") return dodecahedron();
  if (name == "tetrahedron") return tetrahedron();
  if (name == "triprism") return triangular_prism_example();
  if (int n = suffix("antiprism"); n > 0) return antiprism(n);
  if (int n = suffix("prism"); n > 0) {
    if (n > 12) throw Error(ErrorKind::UnsupportedN, "catalog prisms have 3 <= n <= 12");
    return prism(n);
  }
  if (int n = suffix("pyramid"); n > 0) return pyramid(n);
  throw Error(ErrorKind::UnknownName, "no builtin polyhedron '" + name + "'");
}

}  // namespace coxdef
