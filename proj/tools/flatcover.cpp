// flatcover command-line tool.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "flatcover/clustering/exact.hpp"
#include "flatcover/clustering/heuristic.hpp"
#include "flatcover/core/errors.hpp"
#include "flatcover/core/guard.hpp"
#include "flatcover/cover/solver.hpp"
#include "flatcover/fitting/best_fit.hpp"
#include "flatcover/io/generators.hpp"
#include "flatcover/io/json.hpp"
#include "flatcover/io/svg.hpp"
#include "flatcover/reductions/dominating_set.hpp"
#include "flatcover/reductions/rmis.hpp"
#include "flatcover/reductions/verify.hpp"
#include "manifest.hpp"

namespace fc = flatcover;
using fc::io::Json;

namespace {

enum Exit { kOk = 0, kNo = 1, kUsage = 2, kGuard = 3 };

struct Common {
  std::uint64_t seed = 0;
  int threads = 1;
  double tol = 1e-9;
  std::optional<std::uint64_t> guard;
  std::string output;
  bool timing = false;
  std::vector<std::string> argv;

  std::uint64_t cap(std::uint64_t fallback) const { return guard ? *guard : fc::guard_from_env(fallback); }

  fc::tools::Manifest manifest(const std::string& command) const {
    fc::tools::Manifest m(command, argv, seed);
    m.record_time(timing);
    return m;
  }

  // Result JSON goes to --output when given, otherwise to stdout.
  void emit(const Json& body, const fc::tools::Manifest& m) const {
    Json j = body;
    j["manifest"] = m.json();
    const std::string text = fc::io::dump(j);
    if (output.empty())
      std::cout << text;
    else
      fc::io::write_text(output, text);
  }

  // Verdict lines go to stdout only when stdout is not carrying JSON.
  std::ostream& say() const { return output.empty() ? std::cerr : std::cout; }
};

std::vector<fc::AffineFlat> flats_from_solution(const Json& j, std::size_t dim) {
  if (j.contains("flats")) return fc::io::solution_from_json(j).flats;
  std::vector<fc::AffineFlat> out;
  if (j.contains("hyperplanes")) {
    if (dim != 2) throw std::invalid_argument("hyperplane solutions plot only in the plane");
    for (const auto& h : fc::io::cover_from_json(j)) {
      const auto& c = h.coeffs();
      const double a = c[1].get_d(), b = c[2].get_d(), c0 = c[0].get_d();
      const double nn = a * a + b * b;
      Eigen::MatrixXd dir(2, 1);
      dir << -b, a;
      Eigen::Vector2d p(-c0 * a / nn, -c0 * b / nn);
      out.push_back(fc::AffineFlat::canonicalize(dir, p));
    }
    return out;
  }
  throw std::invalid_argument("solution has neither flats nor hyperplanes");
}

int print_report(const fc::VerifyReport& rep, std::ostream& os) {
  for (const auto& c : rep.checks)
    os << c.name << ": " << (c.ok ? "PASS" : "FAIL") << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  os << "overall: " << (rep.ok() ? "PASS" : "FAIL") << "\n";
  return rep.ok() ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flatcover: projective clustering and hyperplane cover toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Common co;
  for (int i = 0; i < argc; ++i) co.argv.emplace_back(argv[i]);
  co.argv[0] = "flatcover";
  app.add_option("--seed", co.seed, "RNG seed");
  app.add_option("--threads", co.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--tol", co.tol, "numeric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--guard", co.guard, "enumeration cap (overrides FLATCOVER_GUARD)")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", co.output, "output file (default stdout)");
  app.add_flag("--timing", co.timing, "record wall time in the manifest");
  std::function<int()> run;

  // fit
  auto* fit = app.add_subcommand("fit", "best-fit r-flat");
  std::string fit_in, fit_svg;
  int fit_r = 1;
  fit->add_option("input", fit_in)->required()->check(CLI::ExistingFile);
  fit->add_option("-r,--rank", fit_r, "flat dimension")->required();
  fit->add_option("--svg", fit_svg, "also write a plot (d = 2)");
  fit->callback([&] {
    run = [&] {
      auto m = co.manifest("fit");
      m.add_input(fit_in);
      const auto cloud = fc::io::as_float(fc::io::load_cloud(fit_in));
      const auto fr = fc::best_fit_flat(cloud, fit_r);
      co.emit(fc::io::fit_json(fr), m);
      if (!fit_svg.empty()) fc::io::write_text(fit_svg, fc::io::plot_svg(cloud, {fr.flat}));
      return int(kOk);
    };
  });

  // cluster
  auto* cl = app.add_subcommand("cluster", "k-flat clustering");
  std::string cl_in, cl_svg;
  std::size_t cl_k = 2;
  int cl_r = 1;
  bool cl_heur = false, cl_exact = false, cl_no_prune = false;
  std::optional<double> cl_budget;
  fc::HeuristicConfig hcfg;
  cl->add_option("input", cl_in)->required()->check(CLI::ExistingFile);
  cl->add_option("-k", cl_k, "number of flats")->required();
  cl->add_option("-r,--rank", cl_r, "flat dimension")->required();
  auto* ex_flag = cl->add_flag("--exact", cl_exact, "exact partition search (default)");
  cl->add_flag("--heuristic", cl_heur, "alternating k-subspaces")->excludes(ex_flag);
  cl->add_option("--budget", cl_budget, "decision mode: answer cost <= B");
  cl->add_flag("--no-prune", cl_no_prune, "disable branch-and-bound pruning");
  cl->add_option("--restarts", hcfg.restarts, "heuristic restarts");
  cl->add_option("--max-iter", hcfg.max_iter, "heuristic iterations per restart");
  cl->add_option("--svg", cl_svg, "also write a plot (d = 2)");
  cl->callback([&] {
    run = [&] {
      auto m = co.manifest("cluster");
      m.add_input(cl_in);
      const auto cloud = fc::io::as_float(fc::io::load_cloud(cl_in));
      fc::ClusteringSolution sol;
      Json extra;
      if (cl_heur) {
        hcfg.rng_seed = co.seed;
        hcfg.threads = co.threads;
        sol = fc::solve_heuristic(cloud, cl_k, cl_r, hcfg);
        extra = {{"method", "heuristic"}, {"restarts", hcfg.restarts}};
      } else {
        fc::ExactOptions opt;
        opt.prune = !cl_no_prune;
        opt.guard = co.cap(fc::kDefaultGuard);
        const auto res = fc::solve_exact(cloud, cl_k, cl_r, opt);
        sol = res.solution;
        extra = {{"method", "exact"}, {"leaves", res.leaves}, {"pruned", res.pruned}};
      }
      Json out = fc::io::solution_json(sol, cl_k, cl_r);
      for (auto& [key, val] : extra.items()) out[key] = val;
      int code = kOk;
      if (cl_budget) {
        const bool yes = sol.cost <= *cl_budget;
        out["budget"] = *cl_budget;
        out["answer"] = yes ? "YES" : "NO";
        co.say() << (yes ? "YES" : "NO") << "\n";
        code = yes ? kOk : kNo;
      }
      co.emit(out, m);
      if (!cl_svg.empty()) fc::io::write_text(cl_svg, fc::io::plot_svg(cloud, sol.flats));
      return code;
    };
  });

  // cover
  auto* cv = app.add_subcommand("cover", "hyperplane cover decision");
  std::string cv_in;
  std::size_t cv_k = 1;
  bool cv_kernel = false;
  cv->add_option("input", cv_in)->required()->check(CLI::ExistingFile);
  cv->add_option("-k", cv_k, "number of hyperplanes")->required();
  cv->add_flag("--kernel", cv_kernel, "forced-line preprocessing (d = 2)");
  cv->callback([&] {
    run = [&] {
      auto m = co.manifest("cover");
      m.add_input(cv_in);
      const auto cloud = fc::io::require_exact(fc::io::load_cloud(cv_in));
      fc::CoverOptions opt;
      opt.kernel = cv_kernel;
      opt.guard = co.cap(fc::kDefaultCandidateGuard);
      const auto res = fc::solve_cover(cloud, cv_k, opt);
      Json out = res.feasible ? fc::io::cover_json(res.hyperplanes) : Json{{"k", cv_k}, {"hyperplanes", Json::array()}};
      out["answer"] = res.feasible ? "YES" : "NO";
      out["nodes"] = res.nodes;
      co.say() << (res.feasible ? "YES" : "NO") << "\n";
      co.emit(out, m);
      return int(res.feasible ? kOk : kNo);
    };
  });

  // reduce-ds
  auto* rds = app.add_subcommand("reduce-ds", "dominating set to hyperplane cover");
  std::string rds_graph;
  std::size_t rds_k = 2;
  bool rds_unchecked = false;
  rds->add_option("graph", rds_graph)->required()->check(CLI::ExistingFile);
  rds->add_flag("--unchecked", rds_unchecked, "allow k' = 1 and vertices adjacent to all others");
  rds->add_option("-k", rds_k, "dominating set size k'")->required();
  rds->callback([&] {
    run = [&] {
      auto m = co.manifest("reduce-ds");
      m.add_input(rds_graph);
      const auto g = fc::io::graph_from_json(fc::io::parse_json(fc::io::read_text(rds_graph), rds_graph));
      auto out = fc::io::vandermonde_json(fc::ds_to_hyperplane_cover(g, rds_k, !rds_unchecked), !rds_unchecked);
      out["graph_sha256"] = fc::tools::sha256_hex(fc::io::dump(fc::io::graph_json(g)));
      co.emit(out, m);
      return int(kOk);
    };
  });

  // reduce-rmis
  auto* rr = app.add_subcommand("reduce-rmis", "multicolored independent set to line clustering");
  std::string rr_graph;
  bool rr_faithful = false, rr_no_points = false;
  rr->add_option("graph", rr_graph)->required()->check(CLI::ExistingFile);
  rr->add_flag("--faithful", rr_faithful, "full constants; points are never attached");
  rr->add_flag("--no-points", rr_no_points, "omit the point cloud");
  rr->callback([&] {
    run = [&] {
      auto m = co.manifest("reduce-rmis");
      m.add_input(rr_graph);
      const auto g = fc::io::graph_from_json(fc::io::parse_json(fc::io::read_text(rr_graph), rr_graph));
      const auto inst = fc::rmis_to_line_clustering(g, rr_faithful);
      for (const auto& w : inst.warnings) std::cerr << "warning: " << w << "\n";
      auto out = fc::io::rmis_json(inst, !rr_faithful && !rr_no_points, co.cap(10'000'000ULL));
      out["graph_sha256"] = fc::tools::sha256_hex(fc::io::dump(fc::io::graph_json(g)));
      co.emit(out, m);
      return int(kOk);
    };
  });

  // verify
  auto* vf = app.add_subcommand("verify", "check a witness against an instance");
  std::string vf_inst, vf_wit;
  std::optional<std::size_t> vf_k;
  std::optional<double> vf_budget;
  vf->add_option("instance", vf_inst)->required()->check(CLI::ExistingFile);
  vf->add_option("witness", vf_wit)->required()->check(CLI::ExistingFile);
  vf->add_option("-k", vf_k, "cover size bound for plain point clouds");
  vf->add_option("--budget", vf_budget, "cost bound for clustering solutions");
  vf->callback([&] {
    run = [&] {
      const Json inst = fc::io::parse_json(fc::io::read_text(vf_inst), vf_inst);
      const Json wit = fc::io::parse_json(fc::io::read_text(vf_wit), vf_wit);
      const std::string kind = inst.value("reduction", std::string());
      fc::VerifyReport rep;
      if (kind == "dominating-set") {
        const auto ds = fc::io::vandermonde_from_json(inst);
        if (wit.contains("vertices"))
          rep = fc::verify_ds_vertices(ds, wit.at("vertices").get<std::vector<std::size_t>>());
        else
          rep = fc::verify_ds_cover(ds, fc::io::cover_from_json(wit));
      } else if (kind == "rmis") {
        const auto ri = fc::io::rmis_from_json(inst);
        if (!wit.contains("selection")) throw std::invalid_argument("rmis witness needs \"selection\"");
        rep = fc::verify_rmis_selection(ri, wit.at("selection").get<std::vector<std::size_t>>());
      } else if (wit.contains("hyperplanes")) {
        const auto cloud = fc::io::require_exact(fc::io::cloud_from_json(inst));
        const auto planes = fc::io::cover_from_json(wit);
        rep = fc::verify_cover_witness(cloud, planes, vf_k.value_or(planes.size()));
      } else {
        const auto cloud = fc::io::as_float(fc::io::cloud_from_json(inst));
        rep = fc::verify_clustering(cloud, fc::io::solution_from_json(wit), co.tol, vf_budget);
      }
      return print_report(rep, std::cout);
    };
  });

  // gen
  auto* gn = app.add_subcommand("gen", "instance generators");
  std::string gn_kind;
  std::size_t gn_n = 12, gn_dim = 2, gn_k = 3, gn_r = 1, gn_per = 4, gn_m = 3, gn_ell = 2, gn_nu = 4, gn_q = 1;
  std::uint64_t gn_range = 4;
  double gn_noise = 0.1, gn_spacing = 1.0;
  gn->add_option("kind", gn_kind, "planted | random | integer | grid | path | circulant")
      ->required()
      ->check(CLI::IsMember({"planted", "random", "integer", "grid", "path", "circulant"}));
  gn->add_option("--n", gn_n, "points (random, integer) or vertices (path)");
  gn->add_option("--dim", gn_dim, "ambient dimension");
  gn->add_option("-k", gn_k, "planted flats");
  gn->add_option("-r,--rank", gn_r, "planted flat dimension");
  gn->add_option("--per-flat", gn_per, "points per planted flat");
  gn->add_option("--noise", gn_noise, "planted noise standard deviation");
  gn->add_option("--spacing", gn_spacing, "planted flat spacing");
  gn->add_option("--range", gn_range, "integer coordinate range");
  gn->add_option("--m", gn_m, "grid side");
  gn->add_option("--ell", gn_ell, "color classes (circulant)");
  gn->add_option("--nu", gn_nu, "class size (circulant)");
  gn->add_option("--q", gn_q, "degree for two-class circulant graphs");
  gn->callback([&] {
    run = [&] {
      auto m = co.manifest("gen");
      Json out;
      if (gn_kind == "planted") {
        fc::gen::PlantedSpec s{gn_dim, gn_k, gn_r, gn_per, gn_spacing, gn_noise};
        const auto p = fc::gen::planted(s, co.seed);
        out = fc::io::cloud_json(p.cloud);
        Json flats = Json::array();
        for (const auto& f : p.flats) flats.push_back(fc::io::flat_json(f));
        out["planted"] = {{"labels", p.labels}, {"flats", flats}};
      } else if (gn_kind == "random") {
        out = fc::io::cloud_json(fc::gen::uniform_cloud(gn_n, gn_dim, co.seed));
      } else if (gn_kind == "integer") {
        out = fc::io::cloud_json(fc::gen::integer_cloud(gn_n, gn_dim, gn_range, co.seed));
      } else if (gn_kind == "grid") {
        out = fc::io::cloud_json(fc::gen::grid(gn_m));
      } else if (gn_kind == "path") {
        out = fc::io::graph_json(fc::gen::path_graph(gn_n));
      } else {
        out = fc::io::graph_json(gn_ell == 2 ? fc::gen::two_class_circulant(gn_nu, gn_q)
                                             : fc::gen::circulant_colored(gn_ell, gn_nu));
      }
      co.emit(out, m);
      return int(kOk);
    };
  });

  // plot
  auto* pl = app.add_subcommand("plot", "SVG scatter plot (d = 2)");
  std::string pl_in, pl_sol;
  pl->add_option("input", pl_in)->required()->check(CLI::ExistingFile);
  pl->add_option("--solution", pl_sol, "clustering or cover solution")->check(CLI::ExistingFile);
  pl->callback([&] {
    run = [&] {
      const auto cloud = fc::io::as_float(fc::io::load_cloud(pl_in));
      std::vector<fc::AffineFlat> flats;
      if (!pl_sol.empty()) flats = flats_from_solution(fc::io::parse_json(fc::io::read_text(pl_sol), pl_sol), cloud.dim());
      const std::string svg = fc::io::plot_svg(cloud, flats);
      if (co.output.empty())
        std::cout << svg;
      else
        fc::io::write_text(co.output, svg);
      return int(kOk);
    };
  });

  // bench
  auto* bn = app.add_subcommand("bench", "size sweeps as TSV");
  std::string bn_suite;
  std::size_t bn_from = 6, bn_to = 12, bn_k = 2;
  bn->add_option("suite", bn_suite, "partitions | exact | cover")
      ->required()
      ->check(CLI::IsMember({"partitions", "exact", "cover"}));
  bn->add_option("--from", bn_from, "smallest n");
  bn->add_option("--to", bn_to, "largest n");
  bn->add_option("-k", bn_k, "clusters or hyperplanes");
  bn->callback([&] {
    run = [&] {
      if (bn_from > bn_to) throw std::invalid_argument("--from exceeds --to");
      auto m = co.manifest("bench");
      std::ostringstream tsv;
      tsv << "# manifest: " << m.json().dump() << "\n";
      const std::uint64_t cap = co.cap(fc::kDefaultGuard);
      if (bn_suite == "partitions") tsv << "n\tconsistent\tpartitions";
      if (bn_suite == "exact") tsv << "n\tcost\tleaves\tpruned";
      if (bn_suite == "cover") tsv << "n\tanswer\tnodes";
      tsv << (co.timing ? "\tseconds\n" : "\n");
      for (std::size_t n = bn_from; n <= bn_to; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        if (bn_suite == "partitions") {
          const auto cloud = fc::gen::uniform_cloud(n, 2, co.seed + n);
          tsv << n << '\t' << fc::count_consistent_partitions(cloud, bn_k, 1, cap) << '\t'
              << fc::partition_count(n, bn_k).get_str();
        } else if (bn_suite == "exact") {
          const auto cloud = fc::gen::uniform_cloud(n, 2, co.seed + n);
          fc::ExactOptions opt;
          opt.guard = cap;
          const auto res = fc::solve_exact(cloud, bn_k, 1, opt);
          tsv << n << '\t' << fc::detail::format_double(res.solution.cost) << '\t' << res.leaves << '\t' << res.pruned;
        } else {
          const auto cloud = fc::gen::integer_cloud(n, 2, 4, co.seed + n);
          fc::CoverOptions opt;
          opt.guard = co.cap(fc::kDefaultCandidateGuard);
          const auto res = fc::solve_cover(cloud, bn_k, opt);
          tsv << n << '\t' << (res.feasible ? "YES" : "NO") << '\t' << res.nodes;
        }
        if (co.timing) tsv << '\t' << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        tsv << "\n";
      }
      if (co.output.empty())
        std::cout << tsv.str();
      else
        fc::io::write_text(co.output, tsv.str());
      return int(kOk);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return run();
  } catch (const fc::GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kGuard;
  } catch (const fc::IntegrityError& e) {
    std::cerr << "integrity: " << e.what() << "\n";
    return kNo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
