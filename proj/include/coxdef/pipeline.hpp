#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coxdef/hyperbolic.hpp"
#include "coxdef/localdim.hpp"
#include "coxdef/polytope.hpp"
#include "coxdef/tangent.hpp"

namespace coxdef {

// Key-value configuration ("key = value", '#' comments). Keys:
//   tol, gap_factor, precision_ladder (comma separated bits), term_budget,
//   output_dir, threads, allow_slow_groebner
struct Config {
  double tol = 1e-12;
  double gap_factor = 1e3;
  std::vector<int> precision_ladder{53, 256, 1024};
  size_t term_budget = 1000000;
  std::string output_dir;  // empty: nothing persisted
  int threads = 0;         // 0: hardware concurrency
  bool allow_slow_groebner = false;
};
Config parse_config(std::istream& in);
Config load_config(const std::string& path);
// Reads the file named by COXDEF_CONFIG when set, defaults otherwise.
Config config_from_env();

struct NamedOrbifold {
  std::string name;
  Polyhedron P;
  Labeling L;
};
// cu1..cu34 and do1..do13, in lexicographic order of edge strings.
const std::vector<NamedOrbifold>& cube_catalog();
const std::vector<NamedOrbifold>& dodecahedron_catalog();
Labeling triprism_labeling();
// cuK, doK, prismN (N >= 5, family labeling), triprism, idealcube; UnknownName otherwise.
NamedOrbifold lookup(const std::string& name);

// Realization persistence; decimals carry 17 significant digits.
std::string realization_json(const HyperbolicRealization& R);
HyperbolicRealization realization_from_json(const std::string& text);

enum class SeedAnchor { Default, None, Standard, Do13 };
SeedAnchor parse_anchor(const std::string& s);

struct AnalyzeOptions {
  Config config;
  SeedAnchor anchor = SeedAnchor::Default;
  std::optional<int> precision_bits;  // first rung of the ladder
};

struct AnalysisRecord {
  std::string name, polyhedron, orders;
  int O = 0, I = -1, A = -1;
  bool A_lower_bound = false;
  bool L_rigid = false;
  int L_level = 0;
  bool J = false;
  std::optional<double> S;  // only with a gauge fixed
  int rows = 0, cols = 0, rank = 0;
  double gap = 0;
  int precision_bits = 53;
  std::string anchor;
  std::string certification, method, status;
  std::vector<std::string> details;
  double realize_seconds = 0, jacobian_seconds = 0, localdim_seconds = 0;
  std::string error;  // empty on success
  int exit_code = 0;
};

AnalysisRecord analyze_orbifold(const NamedOrbifold& X, const AnalyzeOptions& opt = {});
// Realization with the requested anchor, reusing the in-memory and on-disk caches.
HyperbolicRealization cached_realization(const NamedOrbifold& X, const AnalyzeOptions& opt);

enum class TableSet { Cubes, Dodecahedra, Prisms };
std::vector<NamedOrbifold> table_rows(TableSet set, int n_lo = 5, int n_hi = 12);
std::vector<AnalysisRecord> run_table(const std::vector<NamedOrbifold>& rows, const AnalyzeOptions& opt = {});
std::string table_tsv(TableSet set, const std::vector<AnalysisRecord>& records);
std::string records_json(const std::vector<AnalysisRecord>& records);
std::string record_json(const AnalysisRecord& r);

struct Theorem1Report {
  int rows = 0, cols = 0;
  int rank_D = 0, rank_Dhat = 0, kernel_dim = 0;
  double subspace_distance = 0;
  bool holds = false;
};
// All orders 3 and every vertex ideal; Precondition / TetrahedronUnsupported otherwise.
Theorem1Report verify_theorem1(const Polyhedron& P, const Labeling& L, const AnalyzeOptions& opt = {});

}  // namespace coxdef
