#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "coxdef/error.hpp"
#include "coxdef/pipeline.hpp"

using namespace coxdef;
using json = nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(COXDEF_CLI) + " " + args + " 2>&1";
  RunResult r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch_dir(const std::string& tag) {
  auto d = std::filesystem::temp_directory_path() / ("coxdef_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("config parsing") {
  std::stringstream ss("# comment\n tol = 1e-10\ngap_factor=500\nprecision_ladder = 64, 128\n"
                       "term_budget = 42\noutput_dir = /tmp/x\nthreads = 3\nallow_slow_groebner = true\n");
  auto c = parse_config(ss);
  CHECK(c.tol == 1e-10);
  CHECK(c.gap_factor == 500);
  CHECK(c.precision_ladder == std::vector<int>{64, 128});
  CHECK(c.term_budget == 42);
  CHECK(c.output_dir == "/tmp/x");
  CHECK(c.threads == 3);
  CHECK(c.allow_slow_groebner);
  Config d;
  CHECK(d.tol == 1e-12);
  CHECK(d.gap_factor == 1e3);
  CHECK(d.precision_ladder == std::vector<int>{53, 256, 1024});
  std::stringstream bad("colour = blue\n");
  CHECK_THROWS_AS(parse_config(bad), Error);
  std::stringstream bad2("tol = fast\n");
  CHECK_THROWS_AS(parse_config(bad2), Error);
  std::stringstream bad3("tol\n");
  CHECK_THROWS_AS(parse_config(bad3), Error);
}

TEST_CASE("configuration from the environment") {
  auto dir = scratch_dir("env");
  auto path = dir / "c.cfg";
  std::ofstream(path) << "gap_factor = 250\n";
  setenv("COXDEF_CONFIG", path.c_str(), 1);
  CHECK(config_from_env().gap_factor == 250);
  unsetenv("COXDEF_CONFIG");
  CHECK(config_from_env().gap_factor == 1e3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("name lookup") {
  CHECK(cube_catalog().size() == 34);
  CHECK(dodecahedron_catalog().size() == 13);
  CHECK(labeling_string(lookup("cu21").L) == "232232232323");
  CHECK(labeling_string(lookup("cu27").L) == "232233332323");
  CHECK(lookup("prism8").P.num_faces() == 10);
  CHECK(lookup("triprism").L == parse_labeling("332332255"));
  CHECK(lookup("idealcube").L == Labeling(12, 3));
  auto kind = [](const std::string& n) {
    try {
      lookup(n);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::CheckFailed;
  };
  CHECK(kind("cu35") == ErrorKind::UnknownName);
  CHECK(kind("do0") == ErrorKind::UnknownName);
  CHECK(kind("banana") == ErrorKind::UnknownName);
  CHECK(kind("prism4") == ErrorKind::UnsupportedN);
}

TEST_CASE("realization JSON round trip is exact") {
  auto X = lookup("do3");
  auto R = realize(X.P, X.L);
  auto text = realization_json(R);
  auto back = realization_from_json(text);
  CHECK(back.polyhedron == R.polyhedron);
  CHECK(back.orders == R.orders);
  REQUIRE(back.normals.size() == R.normals.size());
  for (size_t i = 0; i < R.normals.size(); ++i)
    for (int k = 0; k < 4; ++k) CHECK(back.normals[i][k] == R.normals[i][k]);
  CHECK(json::parse(text).contains("gram"));
  CHECK_THROWS_AS(realization_from_json("{\"polyhedron\": 3}"), Error);
}

TEST_CASE("records of representative orbifolds") {
  auto a = analyze_orbifold(lookup("cu21"));
  CHECK(a.error.empty());
  CHECK(a.O == -1);
  CHECK(a.I == 1);
  CHECK(a.A == 1);
  CHECK(a.rows == 25);
  CHECK(a.cols == 24);
  CHECK(a.rank == 23);
  CHECK_FALSE(a.J);
  CHECK_FALSE(a.L_rigid);
  CHECK(a.certification == "exact-groebner");
  auto b = analyze_orbifold(lookup("cu3"));
  CHECK(b.L_rigid);
  CHECK(b.L_level == 1);
  CHECK(b.A == 0);
  CHECK(b.certification == "linear-test");
  auto c = analyze_orbifold(lookup("do13"));
  CHECK(c.A == 1);
  CHECK(c.I == 1);
  CHECK_FALSE(c.S.has_value());
  auto d = analyze_orbifold(lookup("do1"));
  REQUIRE(d.S.has_value());
  CHECK(*d.S == doctest::Approx(0.17653).epsilon(1e-3 / 0.17653));
  auto e = analyze_orbifold(lookup("prism6"));
  CHECK(e.A_lower_bound);
  CHECK(e.A >= 1);
  CHECK(e.I == 3);
  auto j = json::parse(record_json(a));
  CHECK(j.at("name") == "cu21");
  CHECK(j.at("A") == 1);
}

TEST_CASE("ungauged analysis reports no S") {
  AnalyzeOptions o;
  o.anchor = SeedAnchor::None;
  auto d = analyze_orbifold(lookup("do1"), o);
  CHECK(d.J);
  CHECK_FALSE(d.S.has_value());
}

TEST_CASE("tables are deterministic") {
  auto rows = table_rows(TableSet::Cubes);
  REQUIRE(rows.size() == 34);
  AnalyzeOptions one;
  one.config.threads = 1;
  AnalyzeOptions many;
  many.config.threads = 4;
  auto t1 = table_tsv(TableSet::Cubes, run_table(rows, one));
  auto t2 = table_tsv(TableSet::Cubes, run_table(rows, many));
  CHECK(t1 == t2);
  CHECK(t1.find("cu21\t") != std::string::npos);
  CHECK(table_rows(TableSet::Prisms, 5, 12).size() == 8);
}

TEST_CASE("on-disk realization cache") {
  auto dir = scratch_dir("cache");
  AnalyzeOptions o;
  o.config.output_dir = dir.string();
  auto X = lookup("cu5");
  auto R1 = cached_realization(X, o);
  bool found = false;
  for (auto& e : std::filesystem::recursive_directory_iterator(dir)) found = found || e.path().extension() == ".json";
  CHECK(found);
  auto R2 = cached_realization(X, o);
  for (size_t i = 0; i < R1.normals.size(); ++i)
    for (int k = 0; k < 4; ++k) CHECK(R1.normals[i][k] == R2.normals[i][k]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("ideal all-3 structures") {
  auto X = lookup("idealcube");
  auto rep = verify_theorem1(X.P, X.L);
  CHECK(rep.holds);
  CHECK(rep.rank_D == 18);
  CHECK(rep.rank_Dhat == 18);
  CHECK(rep.kernel_dim == 6);
  CHECK(rep.subspace_distance < 1e-9);
  auto kind = [](const Polyhedron& P, const Labeling& L) {
    try {
      verify_theorem1(P, L);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::CheckFailed;
  };
  CHECK(kind(lookup("cu15").P, lookup("cu15").L) == ErrorKind::Precondition);
  CHECK(kind(tetrahedron(), Labeling(6, 3)) == ErrorKind::TetrahedronUnsupported);
  // Three angles pi/3 at every vertex: the regular ideal dodecahedron.
  auto D = verify_theorem1(dodecahedron(), Labeling(30, 3));
  CHECK(D.holds);
  CHECK(D.kernel_dim == 6);
  // A finite vertex is refused.
  Labeling M(12, 3);
  M[0] = 2;
  CHECK(kind(cube(), M) == ErrorKind::Precondition);
}

TEST_CASE("error exit codes") {
  CHECK(Error(ErrorKind::UnknownName, "").exit_code() == 2);
  CHECK(Error(ErrorKind::UnsupportedN, "").exit_code() == 2);
  CHECK(Error(ErrorKind::Precondition, "").exit_code() == 2);
  CHECK(Error(ErrorKind::TetrahedronUnsupported, "").exit_code() == 2);
  CHECK(Error(ErrorKind::AmbiguousRank, "").exit_code() == 3);
  CHECK(Error(ErrorKind::ResourceExceeded, "").exit_code() == 4);
  CHECK(Error(ErrorKind::NoConvergence, "").exit_code() == 1);
}

TEST_CASE("command line") {
  auto r = run_cli("enumerate cube");
  CHECK(r.code == 0);
  int lines = 0;
  for (char ch : r.out) lines += ch == '\n';
  CHECK(lines >= 34);
  auto a = run_cli("analyze cu21 --json");
  CHECK(a.code == 0);
  auto j = json::parse(a.out);
  CHECK(j.at("A") == 1);
  auto u = run_cli("analyze nosuch");
  CHECK(u.code == 2);
  auto err = json::parse(u.out);
  CHECK(err.at("exit_code") == 2);
  CHECK(err.contains("error"));
  CHECK(run_cli("analyze prism --n 4").code == 2);
  CHECK(run_cli("verify-theorem1 tetrahedron").code == 2);
  auto t = run_cli("verify-theorem1");
  CHECK(t.code == 0);
  auto g = run_cli("groebner cu27");
  CHECK(g.code != 0);
}
