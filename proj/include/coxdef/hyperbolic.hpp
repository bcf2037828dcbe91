#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coxdef/polytope.hpp"

namespace coxdef {

using Vec4 = std::array<double, 4>;

// <x, y> = -x1 y1 + x2 y2 + x3 y3 + x4 y4
double lorentz_product(const Vec4& x, const Vec4& y);

// How the isometry gauge is fixed.
enum class AnchorKind {
  None,        // no gauge; normals as produced by the solver
  Standard223, // vertex with orders (2,2,3)
  Standard222, // vertex with orders (2,2,2)
  Do13Frame,   // vertex with orders (3,3,2) placed on the five-fold symmetric frame
  Custom,      // explicit frame vectors
};
const char* anchor_name(AnchorKind k);

// Three frame vectors, each a normalized combination of face normals, sent
// to fixed target vectors. Single-face frame vectors are pinned exactly.
struct Seed {
  AnchorKind kind = AnchorKind::None;
  std::vector<std::vector<std::pair<int, double>>> sources;
  std::vector<Vec4> targets;
  std::vector<Vec4> initial;  // optional full initial guess for all faces
  std::vector<int> pinned_faces() const;
};

struct HyperbolicRealization {
  std::string polyhedron;
  Labeling orders;
  std::vector<Vec4> normals;
  Eigen::MatrixXd gram;
  double residual = 0;
  int precision_bits = 53;
  Seed gauge;  // anchor actually applied (kind None when ungauged)
};

struct SolveOptions {
  double tol = 1e-12;
  int max_iter = 60;
  int steps = 20;
  unsigned rng_seed = 12345;
  int random_restarts = 40;
};

// Target Gram value -cos(pi/n) for every edge.
std::vector<double> edge_targets(const Labeling& L);
// Hyperbolic equations: f normalizations followed by one equation per edge.
Eigen::VectorXd hyperbolic_residuals(const Polyhedron& P, const std::vector<double>& targets,
                                     const std::vector<Vec4>& normals);
Eigen::MatrixXd gram_matrix(const std::vector<Vec4>& normals);

// Standard placement at a vertex with orders (2,2,3) or (2,2,2).
Seed seed_standard(const Polyhedron& P, const Labeling& L);
// Five-fold frame at a (3,3,2) vertex of a dodecahedron.
std::optional<Seed> seed_do13_frame(const Polyhedron& P, const Labeling& L);
// Five-fold frame at every (3,3,2) vertex, in vertex order; the face opposite
// the order-2 edge goes on the axis.
std::vector<Seed> do13_frame_seeds(const Polyhedron& P, const Labeling& L);
// Anchor used by default: five-fold frame on dodecahedra, otherwise standard
// placement when available, otherwise none.
Seed default_seed(const Polyhedron& P, const Labeling& L);
// Standard placement at a given vertex (faces listed in any order).
Seed seed_at_vertex(const Polyhedron& P, const Labeling& L, std::vector<int> faces);

HyperbolicRealization solve_normals(const Polyhedron& P, const Labeling& L, const Seed& seed,
                                    const SolveOptions& opt = {});

struct GramReport {
  bool valid = false;
  bool indecomposable = false;
  bool unit_diagonal = false;
  bool nonpositive_offdiagonal = false;
  bool spans = false;
  bool signature_ok = false;
  bool cone_meets_h3 = false;
  bool via_first_coordinates = false;  // sign test sufficed
  std::array<double, 4> interior_point{};
  std::string failure;
};
GramReport validate_gram(const Polyhedron& P, const HyperbolicRealization& R, double tol = 1e-9);

// Closed-form realizations.
HyperbolicRealization prism_realization(int n);  // closed form, faces as in prism(n)
HyperbolicRealization do13_realization();         // five-fold symmetric dodecahedron
Labeling prism_family_labeling(int n);            // side-side 2, caps 3
Labeling do13_labeling();                         // in the catalog numbering

// Angle-space continuation from a known realization to target orders.
HyperbolicRealization continuation_solve(const Polyhedron& P, const HyperbolicRealization& base,
                                         const Labeling& base_L, const Labeling& target_L,
                                         int steps = 20, const SolveOptions& opt = {});

// Full pipeline: base shape, continuation, gauge fixing, polish, validation.
HyperbolicRealization realize(const Polyhedron& P, const Labeling& L, const Seed& seed,
                              const SolveOptions& opt = {});
HyperbolicRealization realize(const Polyhedron& P, const Labeling& L, const SolveOptions& opt = {});

// Lorentz transformation sending the three source vectors (completed by a
// future unit timelike normal) to the three target vectors.
Eigen::Matrix4d frame_map(const std::array<Vec4, 3>& src, const std::array<Vec4, 3>& dst);

// Face map to the catalog dodecahedron, if P is one.
std::optional<std::vector<int>> isomorphism(const Polyhedron& A, const Polyhedron& B);

// Prism structure: (top, bottom, sides in cyclic order) if P is an n-gonal prism.
struct PrismShape {
  int top = -1, bottom = -1;
  std::vector<int> sides;
};
std::optional<PrismShape> prism_shape(const Polyhedron& P);

}  // namespace coxdef
