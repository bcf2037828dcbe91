#pragma once
#include <optional>
#include <string>
#include <vector>

#include "coxdef/polytope.hpp"

namespace coxdef {

enum class Condition { A1, A2, A3, A4, TA1, TA2, TA3, TA4, TA5, TA6 };
const char* condition_name(Condition c);

struct Violation {
  Condition condition;
  std::vector<int> witness;  // faces of the vertex / circuit / triple
};

struct AndreevVerdict {
  bool admissible = true;
  std::vector<Violation> violations;
};

// Compact realizability with dihedral angles pi/n.
AndreevVerdict check_compact(const Polyhedron& P, const Labeling& L);
// Finite-volume realizability.
AndreevVerdict check_finite_volume(const Polyhedron& P, const Labeling& L);

enum class Mode { Compact, FiniteVolume };

struct EnumerationOptions {
  std::vector<int> orders{2, 3};
  std::optional<int> max_right_angles_per_face;
  Mode mode = Mode::Compact;
};

// Orbit representative: the smallest string among orbit elements starting
// with orders (2,3); orbits without such an element use the smallest string.
Labeling canonical_representative(const SymmetryGroup& G, const Labeling& L);

// One representative per symmetry orbit, sorted by representative string.
std::vector<Labeling> enumerate_labelings(const Polyhedron& P, const EnumerationOptions& opt,
                                          const SymmetryGroup& G);

}  // namespace coxdef
