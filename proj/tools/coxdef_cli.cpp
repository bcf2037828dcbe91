// coxdef: enumerate, analyze, table, verify-theorem1, groebner.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coxdef/andreev.hpp"
#include "coxdef/error.hpp"
#include "coxdef/groebner.hpp"
#include "coxdef/pipeline.hpp"

using namespace coxdef;

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::string stem_for(const Polyhedron& P) {
  if (P.name == "cube") return "cu";
  if (P.name == "dodecahedron") return "do";
  return P.name + "_";
}

void fail(const std::string& msg, int code) {
  nlohmann::json j{{"error", msg}, {"exit_code", code}};
  std::cerr << j.dump() << "\n";
  std::exit(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformations of hyperbolic Coxeter 3-orbifolds rel mirrors"};
  app.require_subcommand(1);

  // Shared options.
  std::string config_path;
  std::optional<int> precision;
  std::optional<double> tol;
  std::string anchor = "default";
  std::string output_dir;
  bool allow_slow = false;
  int threads = 0;
  auto shared = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file (default: $COXDEF_CONFIG)");
    sub->add_option("--precision", precision, "working precision in bits for rank decisions");
    sub->add_option("--tol", tol, "Newton tolerance");
    sub->add_option("--seed-anchor", anchor, "default | none | standard | do13");
    sub->add_option("--output-dir", output_dir, "persist realizations and tables here");
    sub->add_flag("--allow-slow-groebner", allow_slow, "run long exact basis computations");
    sub->add_option("--threads", threads, "worker threads for tables (0: all cores)");
  };

  auto* en = app.add_subcommand("enumerate", "list admissible labelings up to symmetry");
  std::string en_poly, en_orders = "2,3", en_mode = "compact";
  std::optional<int> en_right;
  en->add_option("polyhedron", en_poly, "builtin polyhedron name")->required();
  en->add_option("--orders", en_orders, "allowed edge orders");
  en->add_option("--mode", en_mode, "compact | finite")->check(CLI::IsMember({"compact", "finite"}));
  en->add_option("--max-right-angles-per-face", en_right);

  auto* an = app.add_subcommand("analyze", "full analysis of one orbifold");
  std::string an_name;
  std::optional<int> an_n;
  bool an_json = false;
  an->add_option("name", an_name, "cuK, doK, prismN, prism --n N, triprism, idealcube")->required();
  an->add_option("--n", an_n, "prism size");
  an->add_flag("--json", an_json, "print the full JSON record");
  shared(an);

  auto* tb = app.add_subcommand("table", "reproduce a table");
  std::string tb_set, tb_range = "5..12", tb_format = "tsv";
  tb->add_option("set", tb_set, "cubes | dodecahedra | prisms")
      ->required()
      ->check(CLI::IsMember({"cubes", "dodecahedra", "prisms"}));
  tb->add_option("--n", tb_range, "prism range lo..hi");
  tb->add_option("--format", tb_format, "tsv | json")->check(CLI::IsMember({"tsv", "json"}));
  shared(tb);

  auto* th = app.add_subcommand("verify-theorem1", "rank and kernel check for an ideal all-order-3 orbifold");
  std::string th_name = "idealcube";
  th->add_option("name", th_name, "orbifold name or builtin polyhedron (orders all 3)");
  shared(th);

  auto* gb = app.add_subcommand("groebner", "exact basis for a named orbifold");
  std::string gb_name;
  gb->add_option("name", gb_name, "cu21 or cu27 (any orbifold with exact data)")->required();
  shared(gb);

  CLI11_PARSE(app, argc, argv);

  try {
    AnalyzeOptions opt;
    opt.config = config_path.empty() ? config_from_env() : load_config(config_path);
    if (tol) opt.config.tol = *tol;
    if (!output_dir.empty()) opt.config.output_dir = output_dir;
    if (allow_slow) opt.config.allow_slow_groebner = true;
    if (threads > 0) opt.config.threads = threads;
    opt.precision_bits = precision;
    opt.anchor = parse_anchor(anchor);

    if (*en) {
      Polyhedron P = builtin(en_poly);
      EnumerationOptions eo;
      eo.orders = parse_int_list(en_orders);
      eo.mode = en_mode == "compact" ? Mode::Compact : Mode::FiniteVolume;
      eo.max_right_angles_per_face = en_right;
      auto reps = enumerate_labelings(P, eo, symmetry_group(P));
      for (size_t k = 0; k < reps.size(); ++k) {
        auto c = counts(P, reps[k]);
        std::cout << stem_for(P) << k + 1 << '\t' << labeling_string(reps[k], true) << '\t' << c.e2 << '\t' << c.O
                  << '\n';
      }
      return 0;
    }

    if (*an) {
      std::string name = an_name;
      if (name == "prism") {
        if (!an_n) fail("analyze prism needs --n", 2);
        name += std::to_string(*an_n);
      }
      auto rec = analyze_orbifold(lookup(name), opt);
      if (an_json) {
        std::cout << nlohmann::json::parse(record_json(rec)).dump(1) << "\n";
      } else if (rec.error.empty()) {
        std::cout << rec.name << "  " << rec.orders << "\n"
                  << "O=" << rec.O << " I=" << rec.I << " A=" << (rec.A_lower_bound ? ">=" : "") << rec.A
                  << " L=" << (rec.L_rigid ? "yes, level " + std::to_string(rec.L_level) : "no")
                  << " J=" << (rec.J ? "yes" : "no");
        if (rec.S) std::printf(" S=%.5f", *rec.S);
        std::cout << "\njacobian " << rec.rows << "x" << rec.cols << " rank " << rec.rank << " gap " << rec.gap
                  << " (" << rec.precision_bits << " bits, anchor " << rec.anchor << ")\n"
                  << "certification: " << rec.certification << " — " << rec.status << "\n";
        for (const auto& d : rec.details) std::cout << "  " << d << "\n";
      }
      if (!rec.error.empty()) fail(rec.error, rec.exit_code);
      return 0;
    }

    if (*tb) {
      TableSet set = tb_set == "cubes" ? TableSet::Cubes : tb_set == "dodecahedra" ? TableSet::Dodecahedra : TableSet::Prisms;
      int lo = 5, hi = 12;
      if (auto dots = tb_range.find(".."); dots != std::string::npos) {
        lo = std::stoi(tb_range.substr(0, dots));
        hi = std::stoi(tb_range.substr(dots + 2));
      } else {
        lo = hi = std::stoi(tb_range);
      }
      auto recs = run_table(table_rows(set, lo, hi), opt);
      std::string tsv = table_tsv(set, recs), js = records_json(recs);
      std::cout << (tb_format == "tsv" ? tsv : js + "\n");
      if (!opt.config.output_dir.empty()) {
        std::ofstream(opt.config.output_dir + "/" + tb_set + ".tsv") << tsv;
        std::ofstream(opt.config.output_dir + "/" + tb_set + ".json") << js << "\n";
      }
      int worst = 0;
      for (const auto& r : recs) worst = std::max(worst, r.exit_code);
      return worst;
    }

    if (*th) {
      Polyhedron P;
      Labeling L;
      try {
        auto X = lookup(th_name);
        P = X.P;
        L = X.L;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UnknownName) throw;
        P = builtin(th_name);
        L.assign(P.num_edges(), 3);
      }
      auto t = verify_theorem1(P, L, opt);
      std::cout << "D: " << t.rows << "x" << t.cols << "\nrank D = " << t.rank_D << "\nrank D^ = " << t.rank_Dhat
                << "\nkernel dimension = " << t.kernel_dim << "\nisometry subspace distance = " << t.subspace_distance
                << "\n"
                << (t.holds ? "smooth 6-dimensional deformation space (isometry orbits only)" : "check failed") << "\n";
      return t.holds ? 0 : 1;
    }

    if (*gb) {
      auto X = lookup(gb_name);
      auto S = exact_system(X.P, X.L);
      if (!S) fail("no exact data for " + gb_name, 2);
      if (S->slow && !opt.config.allow_slow_groebner)
        fail(gb_name + " has a long-running basis; pass --allow-slow-groebner", 2);
      ExactOptions eo;
      eo.groebner.term_budget = opt.config.term_budget;
      eo.allow_slow = true;
      auto t0 = std::chrono::steady_clock::now();
      auto v = exact_local_dimension(*S, eo);
      double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cout << basis_text(*S->ring, v.basis);
      std::cout << "# radical steps: " << v.radical_steps << "\n# free variables:";
      for (const auto& f : v.free_variables) std::cout << " " << f;
      std::cout << "\n# local dimension: " << v.A << "\n";
      for (const auto& s : v.analysis.syzygies_verified) std::cout << "# syzygy verified: " << s << "\n";
      for (const auto& c : v.analysis.chains) std::cout << "# " << c << "\n";
      std::printf("# %.2f s\n", dt);
      return 0;
    }
  } catch (const Error& e) {
    fail(e.what(), e.exit_code());
  } catch (const std::exception& e) {
    fail(e.what(), 1);
  }
  return 0;
}
