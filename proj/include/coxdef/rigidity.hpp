#pragma once
#include <optional>
#include <string>
#include <vector>

#include "coxdef/polytope.hpp"

namespace coxdef {

struct LinearTestResult {
  bool rigid = false;
  std::vector<int> level;          // per face, 0 when never made rigid
  std::vector<int> stalled_faces;
  int max_level = 0;
};

// Fixpoint: a face is rigid at level k once at least three of its edges are
// of order 2 or shared with a face made rigid at a lower level.
LinearTestResult linear_test(const Polyhedron& P, const Labeling& L);

struct OrderabilityResult {
  bool orderable = false;
  std::vector<int> order;  // faces from lowest to highest index
};
// Each face has at most three edges that are of order 2 or shared with a
// higher face. Removing a lowest face only relaxes the others, so peeling
// eligible faces greedily is exhaustive.
OrderabilityResult orderability_test(const Polyhedron& P, const Labeling& L);
bool is_valid_ordering(const Polyhedron& P, const Labeling& L, const std::vector<int>& order);

bool is_cone_type(const Polyhedron& P, const Labeling& L);
bool is_product_type(const Polyhedron& P, const Labeling& L);
// Finite Coxeter group: only possible for a tetrahedron with positive
// definite cosine matrix.
bool has_finite_group(const Polyhedron& P, const Labeling& L);

// 3f - e - e2 - k(P) for orderable normal-type orbifolds.
int choi_dimension(const Polyhedron& P, const Labeling& L);

// "rigid rel mirrors" for orderable compact orbifolds with more than seven faces.
std::optional<std::string> orderable_rigidity_shortcut(const Polyhedron& P, const Labeling& L);

}  // namespace coxdef
