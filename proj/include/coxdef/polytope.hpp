#pragma once
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace coxdef {

// Abstract convex 3-polyhedron described through its faces. Faces and edges
// are 0-based internally; edge k is printed as e_{k+1}.
struct Polyhedron {
  std::string name;
  std::vector<std::vector<int>> cycles;        // neighbouring faces of each face, cyclic
  std::vector<std::array<int, 2>> edges;       // (i, j) with i < j
  std::vector<std::vector<int>> face_edges;    // boundary edges of each face, cyclic
  std::vector<std::vector<int>> vertices;      // faces around each vertex, cyclic
  std::vector<std::vector<int>> vertex_edges;  // edges at each vertex
  std::vector<std::array<int, 2>> edge_ends;   // the two vertices of each edge
  std::vector<std::vector<int>> edge_of;       // f x f, -1 when not adjacent

  int num_faces() const { return static_cast<int>(cycles.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int edge(int i, int j) const { return edge_of[i][j]; }
  bool adjacent(int i, int j) const { return i != j && edge_of[i][j] >= 0; }
  bool trivalent() const;
  bool is_tetrahedron() const { return num_faces() == 4 && num_edges() == 6; }
};

// Edge orders indexed by edge id.
using Labeling = std::vector<int>;

// cycles[i] lists the faces adjacent to face i in cyclic order. edge_order, when
// non-empty, fixes the numbering of edges as a list of face pairs.
Polyhedron build_polyhedron(const std::vector<std::vector<int>>& cycles,
                            const std::vector<std::array<int, 2>>& edge_order = {},
                            const std::string& name = "");

// Text format: one face per line, whitespace separated neighbour ids (0-based).
Polyhedron read_face_cycles(std::istream& in, const std::string& name = "");

struct Counts {
  int f = 0, e = 0, v = 0, e2 = 0, O = 0;
};
Counts counts(const Polyhedron& P, const Labeling& L);

// Prismatic k-circuits (k = 3 or 4) as face cycles in canonical rotation.
std::vector<std::vector<int>> prismatic_circuits(const Polyhedron& P, int k);

struct SymmetryGroup {
  std::vector<std::vector<int>> elements;  // face permutations, identity first
  std::vector<std::vector<int>> edge_maps; // induced edge permutations
  int size() const { return static_cast<int>(elements.size()); }
};
SymmetryGroup symmetry_group(const Polyhedron& P);
std::vector<int> edge_permutation(const Polyhedron& P, const std::vector<int>& face_perm);
// Relabel L through a symmetry: result[edge_map[e]] = L[e].
Labeling transport(const std::vector<int>& edge_map, const Labeling& L);

int automorphism_dim(const Polyhedron& P);

enum class VertexKind { Finite, Ideal, Hyperinfinite };
std::vector<VertexKind> classify_vertices(const Polyhedron& P, const Labeling& L);

std::string labeling_string(const Labeling& L, bool spaced = false);
Labeling parse_labeling(const std::string& s);
void check_labeling(const Polyhedron& P, const Labeling& L);

// Builtin catalog with fixed face and edge numbering.
Polyhedron cube();
Polyhedron dodecahedron();
Polyhedron prism(int n);
Polyhedron triangular_prism_example();
Polyhedron tetrahedron();
Polyhedron antiprism(int n);
Polyhedron pyramid(int n);
// "cube", "dodecahedron", "prismN", "triprism", "tetrahedron", "antiprismN", "pyramidN"
Polyhedron builtin(const std::string& name);

}  // namespace coxdef
