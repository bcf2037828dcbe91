#include "coxdef/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "coxdef/andreev.hpp"
#include "coxdef/error.hpp"
#include "coxdef/rigidity.hpp"

namespace coxdef {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

Config parse_config(std::istream& in) {
  Config c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::Precondition, "config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    try {
      if (key == "tol") c.tol = std::stod(val);
      else if (key == "gap_factor") c.gap_factor = std::stod(val);
      else if (key == "term_budget") c.term_budget = std::stoull(val);
      else if (key == "output_dir") c.output_dir = val;
      else if (key == "threads") c.threads = std::stoi(val);
      else if (key == "allow_slow_groebner") c.allow_slow_groebner = (val == "1" || val == "true" || val == "yes");
      else if (key == "precision_ladder") {
        c.precision_ladder.clear();
        std::stringstream ss(val);
        std::string tok;
        while (std::getline(ss, tok, ',')) c.precision_ladder.push_back(std::stoi(trim(tok)));
        if (c.precision_ladder.empty()) throw std::invalid_argument("empty ladder");
      } else {
        throw Error(ErrorKind::Precondition, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Precondition, "config line " + std::to_string(lineno) + ": bad value '" + val + "'");
    }
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Precondition, "cannot read config file " + path);
  return parse_config(in);
}

Config config_from_env() {
  const char* p = std::getenv("COXDEF_CONFIG");
  if (!p || !*p) return {};
  return load_config(p);
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

std::vector<NamedOrbifold> build_catalog(const Polyhedron& P, const std::string& stem, std::optional<int> max_right) {
  auto G = symmetry_group(P);
  EnumerationOptions o;
  o.max_right_angles_per_face = max_right;
  auto reps = enumerate_labelings(P, o, G);
  std::vector<NamedOrbifold> out;
  for (size_t k = 0; k < reps.size(); ++k) out.push_back({stem + std::to_string(k + 1), P, reps[k]});
  return out;
}

std::optional<int> numeric_suffix(const std::string& name, const std::string& stem) {
  if (name.rfind(stem, 0) != 0 || name.size() == stem.size()) return std::nullopt;
  std::string rest = name.substr(stem.size());
  if (!std::all_of(rest.begin(), rest.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) return std::nullopt;
  return std::stoi(rest);
}

}  // namespace

const std::vector<NamedOrbifold>& cube_catalog() {
  static const std::vector<NamedOrbifold> cat = build_catalog(cube(), "cu", std::nullopt);
  return cat;
}

const std::vector<NamedOrbifold>& dodecahedron_catalog() {
  static const std::vector<NamedOrbifold> cat = build_catalog(dodecahedron(), "do", 2);
  return cat;
}

// Edges in lexicographic face-pair order: F1F3, F1F4, F1F5, F2F3, F2F4, F2F5, F3F4, F3F5, F4F5.
Labeling triprism_labeling() { return parse_labeling("332332255"); }

NamedOrbifold lookup(const std::string& name) {
  if (auto k = numeric_suffix(name, "cu")) {
    const auto& cat = cube_catalog();
    if (*k >= 1 && *k <= static_cast<int>(cat.size())) return cat[*k - 1];
  }
  if (auto k = numeric_suffix(name, "do")) {
    const auto& cat = dodecahedron_catalog();
    if (*k >= 1 && *k <= static_cast<int>(cat.size())) return cat[*k - 1];
  }
  if (auto n = numeric_suffix(name, "prism")) {
    if (*n < 5 || *n > 12) throw Error(ErrorKind::UnsupportedN, "prism family needs 5 <= n <= 12");
    return {name, prism(*n), prism_family_labeling(*n)};
  }
  if (name == "triprism") return {name, triangular_prism_example(), triprism_labeling()};
  if (name == "idealcube") return {name, cube(), Labeling(12, 3)};
  throw Error(ErrorKind::UnknownName, "unknown orbifold '" + name + "'");
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

std::string dec(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string realization_json(const HyperbolicRealization& R) {
  json j;
  j["polyhedron"] = R.polyhedron;
  j["orders"] = labeling_string(R.orders);
  j["precision"] = R.precision_bits;
  j["anchor"] = anchor_name(R.gauge.kind);
  json normals = json::array();
  for (const auto& v : R.normals) normals.push_back({dec(v[0]), dec(v[1]), dec(v[2]), dec(v[3])});
  j["normals"] = normals;
  json gram = json::array();
  for (int i = 0; i < R.gram.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < R.gram.cols(); ++k) row.push_back(dec(R.gram(i, k)));
    gram.push_back(row);
  }
  j["gram"] = gram;
  j["residual"] = dec(R.residual);
  return j.dump(1);
}

HyperbolicRealization realization_from_json(const std::string& text) {
  HyperbolicRealization R;
  try {
    json j = json::parse(text);
    R.polyhedron = j.at("polyhedron").get<std::string>();
    R.orders = parse_labeling(j.at("orders").get<std::string>());
    R.precision_bits = j.at("precision").get<int>();
    for (const auto& v : j.at("normals"))
      R.normals.push_back({std::stod(v[0].get<std::string>()), std::stod(v[1].get<std::string>()),
                           std::stod(v[2].get<std::string>()), std::stod(v[3].get<std::string>())});
    R.gram = gram_matrix(R.normals);
    R.residual = std::stod(j.at("residual").get<std::string>());
    std::string a = j.value("anchor", "none");
    for (auto k : {AnchorKind::None, AnchorKind::Standard223, AnchorKind::Standard222, AnchorKind::Do13Frame,
                   AnchorKind::Custom})
      if (a == anchor_name(k)) R.gauge.kind = k;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Precondition, std::string("malformed realization document: ") + e.what());
  }
  return R;
}

SeedAnchor parse_anchor(const std::string& s) {
  if (s == "default") return SeedAnchor::Default;
  if (s == "none") return SeedAnchor::None;
  if (s == "standard") return SeedAnchor::Standard;
  if (s == "do13") return SeedAnchor::Do13;
  throw Error(ErrorKind::Precondition, "anchor must be default, none, standard or do13");
}

// ---------------------------------------------------------------------------
// Analysis

namespace {

const char* anchor_key(SeedAnchor a) {
  switch (a) {
    case SeedAnchor::Default: return "default";
    case SeedAnchor::None: return "none";
    case SeedAnchor::Standard: return "standard";
    case SeedAnchor::Do13: return "do13";
  }
  return "?";
}

std::mutex cache_mutex;
std::map<std::string, HyperbolicRealization> cache;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Seed choose_seed(const NamedOrbifold& X, SeedAnchor a) {
  switch (a) {
    case SeedAnchor::Default: return default_seed(X.P, X.L);
    case SeedAnchor::None: return Seed{};
    case SeedAnchor::Standard: return seed_standard(X.P, X.L);
    case SeedAnchor::Do13: {
      auto s = seed_do13_frame(X.P, X.L);
      if (!s) throw Error(ErrorKind::Precondition, X.name + ": no five-fold frame vertex");
      return *s;
    }
  }
  return Seed{};
}

TangentOptions tangent_options(const AnalyzeOptions& opt) {
  TangentOptions t;
  t.gap_factor = opt.config.gap_factor;
  t.precision_ladder = opt.config.precision_ladder;
  if (opt.precision_bits) {
    std::vector<int> lad{*opt.precision_bits};
    for (int b : opt.config.precision_ladder)
      if (b > *opt.precision_bits) lad.push_back(b);
    t.precision_ladder = lad;
  }
  return t;
}

}  // namespace

HyperbolicRealization cached_realization(const NamedOrbifold& X, const AnalyzeOptions& opt) {
  const std::string key = X.P.name + "|" + labeling_string(X.L) + "|" + anchor_key(opt.anchor);
  namespace fs = std::filesystem;
  std::string file;
  if (!opt.config.output_dir.empty()) {
    std::string stem = X.P.name + "_" + labeling_string(X.L) + "_" + anchor_key(opt.anchor);
    file = (fs::path(opt.config.output_dir) / "realizations" / (stem + ".json")).string();
  }
  auto persist = [&](const HyperbolicRealization& R) {
    if (file.empty()) return;
    fs::create_directories(fs::path(file).parent_path());
    std::ofstream(file) << realization_json(R) << "\n";
  };
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) {
      if (!file.empty() && !fs::exists(file)) persist(it->second);
      return it->second;
    }
  }
  HyperbolicRealization R;
  bool loaded = false;
  if (!file.empty() && fs::exists(file)) {
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    R = realization_from_json(ss.str());
    loaded = R.orders == X.L && R.polyhedron == X.P.name;
  }
  if (!loaded) {
    SolveOptions so;
    so.tol = opt.config.tol;
    auto shape = prism_shape(X.P);
    if (opt.anchor == SeedAnchor::Default && shape && X.P.name.rfind("prism", 0) == 0 && X.P.num_faces() >= 7 &&
        X.L == prism_family_labeling(X.P.num_faces() - 2)) {
      R = prism_realization(X.P.num_faces() - 2);
    } else {
      R = realize(X.P, X.L, choose_seed(X, opt.anchor), so);
    }
    persist(R);
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(key, R);
  return R;
}

AnalysisRecord analyze_orbifold(const NamedOrbifold& X, const AnalyzeOptions& opt) {
  AnalysisRecord r;
  r.name = X.name;
  r.polyhedron = X.P.name;
  r.orders = labeling_string(X.L);
  try {
    check_labeling(X.P, X.L);
    r.O = counts(X.P, X.L).O;
    auto lt = linear_test(X.P, X.L);
    r.L_rigid = lt.rigid;
    r.L_level = lt.max_level;

    auto t0 = std::chrono::steady_clock::now();
    auto R = cached_realization(X, opt);
    r.realize_seconds = seconds_since(t0);
    r.anchor = anchor_name(R.gauge.kind);

    t0 = std::chrono::steady_clock::now();
    auto rep = analyze(X.P, X.L, R, tangent_options(opt));
    r.jacobian_seconds = seconds_since(t0);
    r.rows = rep.rows;
    r.cols = rep.cols;
    r.rank = rep.rank;
    r.I = rep.I;
    r.J = rep.J;
    r.gap = rep.gap;
    r.precision_bits = rep.precision_bits;
    if (R.gauge.kind != AnchorKind::None && rep.J) r.S = rep.min_singular;

    t0 = std::chrono::steady_clock::now();
    if (lt.rigid) {
      r.A = 0;
      r.certification = "linear-test";
      r.method = "linear test of rigidity";
      r.status = "rigid, level " + std::to_string(lt.max_level);
    } else {
      LocalDimOptions lo;
      lo.term_budget = opt.config.term_budget;
      lo.allow_slow_groebner = opt.config.allow_slow_groebner;
      auto v = local_dimension(X.P, X.L, R, rep, lo);
      r.A = v.A;
      r.A_lower_bound = v.lower_bound;
      r.certification = certification_name(v.certification);
      r.method = v.method;
      r.status = v.status;
      r.details = v.details;
    }
    r.localdim_seconds = seconds_since(t0);
    if (r.A > r.I) throw Error(ErrorKind::CheckFailed, "local dimension exceeds the infinitesimal dimension");
  } catch (const Error& e) {
    r.error = e.what();
    r.exit_code = e.exit_code();
  } catch (const std::exception& e) {
    r.error = e.what();
    r.exit_code = 1;
  }
  return r;
}

std::vector<NamedOrbifold> table_rows(TableSet set, int n_lo, int n_hi) {
  switch (set) {
    case TableSet::Cubes: return cube_catalog();
    case TableSet::Dodecahedra: return dodecahedron_catalog();
    case TableSet::Prisms: {
      if (n_lo < 5 || n_hi > 12 || n_lo > n_hi) throw Error(ErrorKind::UnsupportedN, "prism range must lie in 5..12");
      std::vector<NamedOrbifold> out;
      for (int n = n_lo; n <= n_hi; ++n) out.push_back(lookup("prism" + std::to_string(n)));
      return out;
    }
  }
  return {};
}

std::vector<AnalysisRecord> run_table(const std::vector<NamedOrbifold>& rows, const AnalyzeOptions& opt) {
  std::vector<AnalysisRecord> out(rows.size());
  int threads = opt.config.threads > 0 ? opt.config.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max<int>(1, static_cast<int>(rows.size())));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k; (k = next++) < rows.size();) out[k] = analyze_orbifold(rows[k], opt);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

// ---------------------------------------------------------------------------
// Output

namespace {

std::string spaced(const std::string& orders) {
  std::string s;
  for (char ch : orders) {
    if (!s.empty()) s += ' ';
    s += ch;
  }
  return s;
}

std::string fixed5(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5f", x);
  return buf;
}

}  // namespace

std::string table_tsv(TableSet set, const std::vector<AnalysisRecord>& records) {
  std::ostringstream os;
  switch (set) {
    case TableSet::Cubes: os << "name\torders\tO\tI\tA\tL\tJ\tcertification\n"; break;
    case TableSet::Dodecahedra: os << "name\torders\tO\tI\tA\tJ\tS\tcertification\n"; break;
    case TableSet::Prisms: os << "name\torders\tO\tI\tA\tJ\tcertification\n"; break;
  }
  for (const auto& r : records) {
    os << r.name << '\t' << spaced(r.orders) << '\t' << r.O << '\t';
    if (!r.error.empty()) {
      os << "error: " << r.error << '\n';
      continue;
    }
    os << r.I << '\t' << (r.A_lower_bound ? ">=" : "") << r.A << '\t';
    if (set == TableSet::Cubes) {
      os << (r.L_rigid ? "yes, level " + std::to_string(r.L_level) : "no") << '\t';
      os << (r.L_rigid ? "." : r.J ? "yes" : "no") << '\t';
    } else {
      os << (r.J ? "yes" : "no") << '\t';
      if (set == TableSet::Dodecahedra) os << (r.S ? fixed5(*r.S) : ".") << '\t';
    }
    os << r.certification << '\n';
  }
  return os.str();
}

std::string record_json(const AnalysisRecord& r) {
  json j;
  j["name"] = r.name;
  j["polyhedron"] = r.polyhedron;
  j["orders"] = r.orders;
  j["O"] = r.O;
  if (!r.error.empty()) {
    j["error"] = r.error;
    j["exit_code"] = r.exit_code;
    return j.dump();
  }
  j["I"] = r.I;
  j["A"] = r.A;
  j["A_lower_bound"] = r.A_lower_bound;
  j["L"] = {{"rigid", r.L_rigid}, {"level", r.L_level}};
  j["J"] = r.J;
  j["S"] = r.S ? json(*r.S) : json(nullptr);
  j["jacobian"] = {{"rows", r.rows}, {"cols", r.cols}, {"rank", r.rank}, {"gap", r.gap},
                   {"precision_bits", r.precision_bits}};
  j["anchor"] = r.anchor;
  j["certification"] = r.certification;
  j["method"] = r.method;
  j["status"] = r.status;
  j["details"] = r.details;
  j["timings"] = {{"realize", r.realize_seconds}, {"jacobian", r.jacobian_seconds}, {"local_dim", r.localdim_seconds}};
  return j.dump();
}

std::string records_json(const std::vector<AnalysisRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) arr.push_back(json::parse(record_json(r)));
  return arr.dump(1);
}

Theorem1Report verify_theorem1(const Polyhedron& P, const Labeling& L, const AnalyzeOptions& opt) {
  check_labeling(P, L);
  if (P.is_tetrahedron())
    throw Error(ErrorKind::TetrahedronUnsupported, "the tetrahedron is excluded; its deformation space is 3-dimensional");
  for (int o : L)
    if (o != 3) throw Error(ErrorKind::Precondition, "every edge must have order 3");
  for (auto k : classify_vertices(P, L))
    if (k != VertexKind::Ideal) throw Error(ErrorKind::Precondition, "every vertex must be ideal");
  if (!check_finite_volume(P, L).admissible)
    throw Error(ErrorKind::Precondition, "labeling fails the finite-volume conditions");
  NamedOrbifold X{P.name, P, L};
  AnalyzeOptions o = opt;
  auto R = cached_realization(X, o);
  auto rep = analyze(P, L, R, tangent_options(o));
  auto chk = isometry_kernel_check(P, L, R, rep);
  Theorem1Report t;
  t.rows = rep.rows;
  t.cols = rep.cols;
  t.rank_D = chk.rank_D;
  t.rank_Dhat = chk.rank_Dhat;
  t.kernel_dim = chk.kernel_dim;
  t.subspace_distance = chk.subspace_distance;
  t.holds = t.rank_D == t.rank_Dhat && t.rank_D == rep.rows && t.kernel_dim == 6 && t.subspace_distance < 1e-9;
  return t;
}

}  // namespace coxdef
