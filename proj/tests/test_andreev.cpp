#include <doctest.h>

#include <random>
#include <set>

#include "coxdef/andreev.hpp"
#include "coxdef/error.hpp"

using namespace coxdef;

namespace {

// Table rows e1..e12, as printed.
const std::vector<std::string> kCubeRows = {
    "232222232223", "232222232233", "232222232322", "232222232323", "232222232333", "232222233322",
    "232222233332", "232222322223", "232222322332", "232222323223", "232222323322", "232222323323",
    "232222323332", "232222333322", "232222333332", "232223233322", "232223322323", "232223323323",
    "232223333322", "232232232233", "232232232323", "232232232333", "232232332322", "232232332323",
    "232232332332", "232233332223", "232233332323", "232322232233", "232323232323", "232323323323",
    "232323332323", "232323333322", "232333332323", "233223233322"};

const std::vector<std::string> kDodecahedronRows = {
    "232332323232323333332323233232", "232332333232223333332332233233", "232332333232223333332333233223",
    "232332333232223333332333233232", "232332333232323322332333233232", "232332333232333322332332233233",
    "232333223233323333322223333332", "232333233232223333322332333232", "232333233232223333322333333232",
    "232333233233223333322233333322", "232333333222223333333333232323", "232333333222332322233233323323",
    "232333333233223233323233323323"};

}  // namespace

TEST_CASE("cube enumeration reproduces the table") {
  auto P = cube();
  auto reps = enumerate_labelings(P, {}, symmetry_group(P));
  REQUIRE(reps.size() == 34);
  for (size_t k = 0; k < reps.size(); ++k) {
    CAPTURE(k + 1);
    CHECK(labeling_string(reps[k]) == kCubeRows[k]);
  }
}

TEST_CASE("dodecahedron enumeration reproduces the table") {
  auto P = dodecahedron();
  EnumerationOptions o;
  o.max_right_angles_per_face = 2;
  auto reps = enumerate_labelings(P, o, symmetry_group(P));
  REQUIRE(reps.size() == 13);
  for (size_t k = 0; k < reps.size(); ++k) CHECK(labeling_string(reps[k]) == kDodecahedronRows[k]);
}

TEST_CASE("all right angles on the cube are not compact") {
  auto P = cube();
  EnumerationOptions o;
  o.orders = {2};
  CHECK(enumerate_labelings(P, o, symmetry_group(P)).empty());
  CHECK_FALSE(check_compact(P, Labeling(12, 2)).admissible);
}

TEST_CASE("brute force over all 2^12 cube labelings agrees with the pruned enumeration") {
  auto P = cube();
  auto G = symmetry_group(P);
  std::set<Labeling> orbits;
  for (int mask = 0; mask < (1 << 12); ++mask) {
    Labeling L(12);
    for (int e = 0; e < 12; ++e) L[e] = (mask >> e) & 1 ? 3 : 2;
    if (!check_compact(P, L).admissible) continue;
    // Orbit identified by its smallest element, independent of the
    // representative rule used for naming.
    Labeling best = L;
    for (int g = 0; g < G.size(); ++g) best = std::min(best, transport(G.edge_maps[g], L));
    orbits.insert(best);
  }
  CHECK(orbits.size() == 34);
}

TEST_CASE("ideal cube: finite volume but not compact") {
  auto P = cube();
  Labeling L(12, 3);
  CHECK(check_finite_volume(P, L).admissible);
  CHECK_FALSE(check_compact(P, L).admissible);
}

TEST_CASE("enumeration in finite-volume mode contains the compact orbits") {
  auto P = cube();
  auto G = symmetry_group(P);
  EnumerationOptions fv;
  fv.mode = Mode::FiniteVolume;
  auto all = enumerate_labelings(P, fv, G);
  auto compact = enumerate_labelings(P, {}, G);
  std::set<Labeling> s(all.begin(), all.end());
  for (const auto& L : compact) CHECK(s.count(L) == 1);
  CHECK(s.count(Labeling(12, 3)) == 1);
}

TEST_CASE("compact admissibility implies finite volume, and both are symmetry invariant") {
  std::mt19937 rng(7);
  for (auto P : {cube(), dodecahedron(), prism(6)}) {
    auto G = symmetry_group(P);
    std::uniform_int_distribution<int> pick(2, 4), elem(0, G.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      Labeling L(P.num_edges());
      for (auto& o : L) o = pick(rng);
      bool c = check_compact(P, L).admissible, f = check_finite_volume(P, L).admissible;
      if (c) CHECK(f);
      auto M = transport(G.edge_maps[elem(rng)], L);
      CHECK(check_compact(P, M).admissible == c);
      CHECK(check_finite_volume(P, M).admissible == f);
    }
  }
}

TEST_CASE("catalog orbits are invariant: every symmetric copy is admissible and has the same representative") {
  auto P = cube();
  auto G = symmetry_group(P);
  for (const auto& L : enumerate_labelings(P, {}, G))
    for (int g = 0; g < G.size(); ++g) {
      auto M = transport(G.edge_maps[g], L);
      CHECK(check_compact(P, M).admissible);
      CHECK(canonical_representative(G, M) == L);
    }
}

TEST_CASE("violations carry witnesses") {
  auto v = check_compact(cube(), Labeling(12, 2));
  REQUIRE_FALSE(v.admissible);
  REQUIRE_FALSE(v.violations.empty());
  CHECK_FALSE(v.violations.front().witness.empty());
}
