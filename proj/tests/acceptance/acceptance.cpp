// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [N ...]   (no arguments runs all eleven)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "flatcover/clustering/exact.hpp"
#include "flatcover/clustering/heuristic.hpp"
#include "flatcover/core/exact_linalg.hpp"
#include "flatcover/cover/solver.hpp"
#include "flatcover/fitting/best_fit.hpp"
#include "flatcover/io/generators.hpp"
#include "flatcover/reductions/desanitize.hpp"
#include "flatcover/reductions/dominating_set.hpp"
#include "flatcover/reductions/line_cost.hpp"
#include "flatcover/reductions/rmis.hpp"
#include "../support/oracles.hpp"

namespace fc = flatcover;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<oracle::P2> as_p2(const fc::FloatCloud& c) {
  std::vector<oracle::P2> out;
  for (const auto& r : c.records()) out.push_back({r.coords[0], r.coords[1]});
  return out;
}

std::vector<Eigen::VectorXd> as_vecs(const fc::FloatCloud& c) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& r : c.records()) out.push_back(fc::as_vector(r));
  return out;
}

// Shared instance family for criteria 2 and 3.
struct SmallInstance {
  fc::FloatCloud cloud;
  std::size_t dim;
};

std::vector<SmallInstance> small_instances() {
  std::vector<SmallInstance> out;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const std::size_t dim = s < 25 ? 2 : 3;
    const std::size_t n = dim == 2 ? 5 + s % 5 : 5 + s % 4;  // 5..9 in the plane, 5..8 in space
    out.push_back({fc::gen::uniform_cloud(n, dim, 1000 + s), dim});
  }
  return out;
}

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

// 1. Best-fit line against an angle sweep.
Outcome c1() {
  const auto t0 = Clock::now();
  double worst_gap = -INFINITY, worst_centroid = 0;
  int bad = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t n = 2 + s % 49;
    const auto cloud = fc::gen::uniform_cloud(n, 2, s);
    const auto fr = fc::best_fit_flat(cloud, 1);
    const double ref = oracle::angle_sweep_best_line(as_p2(cloud));
    const double cd = fc::dist2_point_flat(fc::centroid(cloud), fr.flat);
    worst_gap = std::max(worst_gap, fr.cost - ref);
    worst_centroid = std::max(worst_centroid, cd);
    if (fr.cost > ref + 1e-6 || cd > 1e-18) ++bad;
  }
  const double t = seconds_since(t0);
  return {bad == 0 && t < 10,
          "100 instances, max(cost - sweep) = " + fmt("%.3g", worst_gap) + ", max centroid dist2 = " +
              fmt("%.3g", worst_centroid) + ", " + fmt("%.2f", t) + " s"};
}

// 2. Pruned exact search against brute-force labelling.
Outcome c2() {
  const auto t0 = Clock::now();
  int bad_cost = 0, bad_voronoi = 0;
  double worst = 0;
  for (const auto& inst : small_instances()) {
    const auto res = fc::solve_exact(inst.cloud, 2, 1);
    const double ref = oracle::brute_force_clustering(as_vecs(inst.cloud), 2, 1);
    worst = std::max(worst, std::abs(res.solution.cost - ref) / std::max(std::abs(ref), 1e-300));
    if (!rel_close(res.solution.cost, ref, 1e-12)) ++bad_cost;
    if (!fc::is_voronoi_consistent(inst.cloud, res.solution, 1e-9)) ++bad_voronoi;
  }
  const double t = seconds_since(t0);
  return {bad_cost == 0 && bad_voronoi == 0 && t < 120,
          "50 instances, worst relative gap " + fmt("%.3g", worst) + ", " + std::to_string(bad_voronoi) +
              " inconsistent, " + fmt("%.2f", t) + " s"};
}

// 3. Heuristic never beats the optimum and usually finds it on clean planted data.
Outcome c3() {
  const auto t0 = Clock::now();
  fc::HeuristicConfig cfg;
  cfg.restarts = 20;
  int below = 0;
  for (const auto& inst : small_instances()) {
    const double ex = fc::solve_exact(inst.cloud, 2, 1).solution.cost;
    const double he = fc::solve_heuristic(inst.cloud, 2, 1, cfg).cost;
    if (he < ex - 1e-9 * ex) ++below;
  }
  int reached = 0;
  const int planted_count = 50;
  for (int s = 0; s < planted_count; ++s) {
    fc::gen::PlantedSpec ps;
    ps.dim = s % 2 ? 3 : 2;
    ps.k = 2;
    ps.per_flat = 4;
    ps.noise = 0.0;
    const auto p = fc::gen::planted(ps, 500 + static_cast<std::uint64_t>(s));
    const double ex = fc::solve_exact(p.cloud, 2, 1).solution.cost;
    cfg.rng_seed = static_cast<std::uint64_t>(s);
    const double he = fc::solve_heuristic(p.cloud, 2, 1, cfg).cost;
    if (he <= ex + 1e-9 * std::max(ex, 1.0)) ++reached;
  }
  const double t = seconds_since(t0);
  const double frac = static_cast<double>(reached) / planted_count;
  return {below == 0 && frac >= 0.8 && t < 60,
          std::to_string(below) + " of 50 below optimum, planted zero-noise reached " + std::to_string(reached) + "/" +
              std::to_string(planted_count) + ", " + fmt("%.2f", t) + " s"};
}

// 4. Planted partition recovery.
Outcome c4() {
  const auto t0 = Clock::now();
  int recovered = 0, cost_ok = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    fc::gen::PlantedSpec ps;
    ps.k = 3;
    ps.per_flat = 4;
    ps.spacing = 1.0;
    ps.noise = 0.1 * ps.spacing;
    const auto p = fc::gen::planted(ps, 4000 + s);
    const auto res = fc::solve_exact(p.cloud, 3, 1);
    // Same partition up to relabelling.
    std::map<std::size_t, std::size_t> to_planted;
    bool same = true;
    for (std::size_t i = 0; i < p.labels.size() && same; ++i) {
      auto [it, fresh] = to_planted.emplace(res.solution.assignment[i], p.labels[i]);
      same = it->second == p.labels[i];
    }
    std::set<std::size_t> images;
    for (auto& kv : to_planted) images.insert(kv.second);
    same = same && images.size() == to_planted.size();
    recovered += same;
    cost_ok += res.solution.cost <= fc::total_cost(p.cloud, p.flats);
  }
  const double t = seconds_since(t0);
  return {recovered == 20 && cost_ok == 20 && t < 300,
          "recovered " + std::to_string(recovered) + "/20, cost <= planted " + std::to_string(cost_ok) + "/20, " +
              fmt("%.2f", t) + " s"};
}

// 5. Line cover against brute force; grid answers; kernel agreement.
Outcome c5() {
  const auto t0 = Clock::now();
  int disagree = 0, kernel_disagree = 0, yes = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t n = 1 + s % 10;
    const std::size_t k = 1 + (s / 10) % 3;
    const std::uint64_t range = s % 2 ? 5 : 3;
    const auto cloud = fc::gen::integer_cloud(n, 2, range, 7000 + s);
    std::vector<oracle::IP> pts;
    for (const auto& r : cloud.records()) pts.push_back({r.coords[0].get_num().get_si(), r.coords[1].get_num().get_si()});
    const bool ref = oracle::brute_force_line_cover(pts, static_cast<int>(k));
    const auto plain = fc::solve_cover(cloud, k);
    fc::CoverOptions ko;
    ko.kernel = true;
    const auto kern = fc::solve_cover(cloud, k, ko);
    disagree += plain.feasible != ref;
    kernel_disagree += kern.feasible != plain.feasible;
    if (plain.feasible && !fc::verify_cover(cloud, plain.hyperplanes)) ++disagree;
    if (kern.feasible && !fc::verify_cover(cloud, kern.hyperplanes)) ++kernel_disagree;
    yes += ref;
  }
  const auto g = fc::gen::grid(3);
  const bool g3 = fc::solve_cover(g, 3).feasible, g2 = fc::solve_cover(g, 2).feasible;
  const double t = seconds_since(t0);
  return {disagree == 0 && kernel_disagree == 0 && g3 && !g2 && t < 120,
          "200 instances (" + std::to_string(yes) + " YES), " + std::to_string(disagree) + " oracle mismatches, " +
              std::to_string(kernel_disagree) + " kernel mismatches, grid k=3 " + (g3 ? "YES" : "NO") + ", k=2 " +
              (g2 ? "YES" : "NO") + ", " + fmt("%.2f", t) + " s"};
}

// 6. Dominating set <=> hyperplane cover on small connected graphs.
Outcome c6() {
  const auto t0 = Clock::now();
  int graphs = 0, mismatches = 0, bad_back = 0, yes = 0;
  for (std::size_t d : {4u, 5u}) {
    std::set<std::uint64_t> seen;
    const std::uint64_t pairs = d * (d - 1) / 2;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
      const auto adj = oracle::adj_from_mask(d, mask);
      if (!oracle::connected(adj)) continue;
      bool full = false;
      for (std::size_t v = 0; v < d; ++v)
        full = full || static_cast<std::size_t>(std::count(adj[v].begin(), adj[v].end(), true)) == d - 1;
      if (full) continue;
      if (!seen.insert(oracle::canonical_mask(adj)).second) continue;
      ++graphs;
      const auto g = fc::gen::graph_from_mask(d, mask);
      const auto inst = fc::ds_to_hyperplane_cover(g, 2);
      const bool ref = oracle::has_dominating_set(adj, 2);
      const auto res = fc::solve_cover(inst.cloud, 2);
      mismatches += res.feasible != ref;
      yes += ref;
      if (res.feasible) {
        try {
          const auto s = fc::cover_to_dominating_set(inst, res.hyperplanes);
          std::vector<std::size_t> sv(s.begin(), s.end());
          if (s.size() > 2 || !oracle::dominates(adj, sv)) ++bad_back;
        } catch (const std::exception&) {
          ++bad_back;
        }
      }
    }
  }
  const double t = seconds_since(t0);
  return {mismatches == 0 && bad_back == 0 && graphs > 0 && t < 900,
          std::to_string(graphs) + " graphs up to isomorphism (" + std::to_string(yes) + " YES), " +
              std::to_string(mismatches) + " mismatches, " + std::to_string(bad_back) + " bad extractions, " +
              fmt("%.2f", t) + " s"};
}

// 7. Square submatrices of the value table are nonsingular.
Outcome c7() {
  const auto t0 = Clock::now();
  // Rows of the d = 5, k' = 2 instance: d^2 k' = 50; coordinates 1..5.
  const std::size_t rows = 50, cols = 5;
  fc::CounterRng rng(77);
  int zero = 0, disagree = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t order = 2 + static_cast<std::size_t>(t) % 4;
    auto rs = rng.sample(rows, order);
    auto cs = rng.sample(cols, order);
    std::sort(rs.begin(), rs.end());
    std::sort(cs.begin(), cs.end());
    std::vector<std::vector<mpz_class>> a(order, std::vector<mpz_class>(order));
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = 0; j < order; ++j) a[i][j] = fc::vandermonde_value(rs[i], cs[j] + 1);
    const mpz_class ref = oracle::leibniz_det(a);
    zero += ref == 0;
    disagree += fc::bareiss_determinant(a) != ref;
  }
  const double t = seconds_since(t0);
  return {zero == 0 && disagree == 0 && t < 30,
          "500 minors, " + std::to_string(zero) + " singular, " + std::to_string(disagree) + " determinant mismatches, " +
              fmt("%.2f", t) + " s"};
}

// Budget recomputed straight from the defining sum.
mpz_class budget_oracle(std::size_t ell, std::size_t nu, std::size_t q) {
  const std::size_t n = ell * nu;
  mpz_class N = static_cast<unsigned long>(n), L = static_cast<unsigned long>(ell);
  mpz_class p, W;
  mpz_pow_ui(p.get_mpz_t(), N.get_mpz_t(), 10);
  mpz_pow_ui(W.get_mpz_t(), N.get_mpz_t(), 30);
  mpz_class n7;
  mpz_pow_ui(n7.get_mpz_t(), N.get_mpz_t(), 7);
  mpz_class sum = 0;
  for (std::size_t i = 1; i <= nu; ++i) {
    mpz_class th = 0;
    for (std::size_t a = 1; a <= i; ++a) th += mpz_class(3 * static_cast<long>(i - a)) * (3 * static_cast<long>(i - a));
    for (std::size_t b = i; b <= nu; ++b) th += mpz_class(3 * static_cast<long>(nu - b)) * (3 * static_cast<long>(nu - b));
    const mpz_class phi = p * L * static_cast<unsigned long>(nu - 1) * th;
    sum += W + phi;
  }
  const mpz_class tail = N - static_cast<unsigned long>(nu) + 1 - static_cast<unsigned long>(q) - L;
  return n7 + (N - L) * W + L * sum - L * W + L * p * tail;
}

std::string audit_failures(const fc::RmisAudit& a) {
  std::string s;
  for (const auto& c : a.checks)
    if (!c.ok) s += " " + c.name;
  return s.empty() ? "none" : s;
}

// 8. Construction integrity, relaxed and faithful.
Outcome c8() {
  const auto t0 = Clock::now();
  const auto relaxed = fc::rmis_to_line_clustering(fc::gen::two_class_circulant(4, 1), false);
  const auto ra = fc::audit_rmis(relaxed);
  const bool rb = relaxed.params.B == budget_oracle(2, 4, 1);
  // Smallest faithful shape: ell = 11 classes, nu = 1332 (divisible by 4, above 11^3).
  const auto faithful = fc::rmis_to_line_clustering(fc::gen::circulant_colored(11, 1332), true);
  const auto fa = fc::audit_rmis(faithful);
  const bool fb = faithful.params.B == budget_oracle(11, 1332, 2);
  mpz_class n32;
  mpz_pow_ui(n32.get_mpz_t(), mpz_class(14652).get_mpz_t(), 32);
  const bool bound = faithful.params.B <= n32;
  const double t = seconds_since(t0);
  return {ra.ok() && rb && fa.ok() && fb && bound && t < 60,
          "relaxed failures: " + audit_failures(ra) + ", B " + (rb ? "matches" : "differs") +
              "; faithful (n = 14652, " + std::to_string(faithful.record_count()) + " records) failures: " +
              audit_failures(fa) + ", B " + (fb ? "matches" : "differs") + ", B <= n^32 " + (bound ? "yes" : "no") +
              ", " + fmt("%.2f", t) + " s"};
}

// Brute-force cost: every record against every line.
mpz_class brute_cost(const fc::RmisInstance& inst, const std::vector<fc::AxisLine>& lines) {
  mpz_class total = 0;
  inst.for_each_record([&](const fc::RmisTag&, const mpz_class& x, const mpz_class& y, const mpz_class& m) {
    mpz_class best = -1;
    for (const auto& l : lines) {
      const mpz_class d = (l.horizontal ? y : x) - l.at.get_num();
      const mpz_class sq = d * d;
      if (best < 0 || sq < best) best = sq;
    }
    total += m * best;
  });
  return total;
}

// 9. Forward direction: independent picks fit the budget, adjacent ones do not.
Outcome c9() {
  const auto t0 = Clock::now();
  int ind_checked = 0, ind_over = 0, adj_checked = 0, adj_under = 0, brute_mismatch = 0;
  const std::size_t nu = 64;
  for (std::size_t q : {1u, 2u}) {
    const auto g = fc::gen::two_class_circulant(nu, q);
    const auto inst = fc::rmis_to_line_clustering(g, false);
    const mpz_class B = inst.params.B;
    for (std::size_t j0 = 0; j0 < nu; ++j0)
      for (std::size_t j1 = 0; j1 < nu; ++j1) {
        const bool independent = g.is_independent({inst.vertex_at(0, j0), inst.vertex_at(1, j1)});
        // Every adjacent pick; independent picks on a fixed stride.
        if (independent && (j0 * nu + j1) % 7 != 0) continue;
        const auto lines = fc::independent_set_to_lines(inst, {j0, j1});
        const fc::Rational cost = fc::exact_solution_cost(inst, lines);
        if ((j0 + j1) % 16 == 0 && cost != fc::Rational(brute_cost(inst, lines))) ++brute_mismatch;
        if (independent) {
          ++ind_checked;
          ind_over += cost > fc::Rational(B);
        } else {
          ++adj_checked;
          adj_under += cost <= fc::Rational(B);
        }
      }
  }
  const double t = seconds_since(t0);
  return {ind_checked > 0 && adj_checked > 0 && ind_over == 0 && adj_under == 0 && brute_mismatch == 0 && t < 120,
          "nu = 64, q = 1 and 2: " + std::to_string(ind_checked) + " independent picks (" + std::to_string(ind_over) +
              " over B), " + std::to_string(adj_checked) + " adjacent picks (" + std::to_string(adj_under) +
              " within B), " + std::to_string(brute_mismatch) + " brute-force mismatches, " + fmt("%.2f", t) + " s"};
}

// 10. Desanitization contract.
Outcome c10() {
  const auto t0 = Clock::now();
  int failures = 0, runs_expanded = 0;
  std::string worst;
  for (std::size_t q : {1u, 2u}) {
    const auto g = fc::gen::two_class_circulant(4, q);
    const auto inst = fc::rmis_to_line_clustering(g, false);
    const auto ds = fc::desanitize_multiset(inst);
    const auto chk = fc::check_desanitized(ds, inst.params.B);
    if (!chk.ok()) ++failures;
    // Expand what can be expanded and check the contract point by point.
    const fc::Rational bound_den = fc::Rational(3 * inst.params.B * ds.total * ds.total);
    std::set<std::pair<fc::Rational, fc::Rational>> all;
    std::size_t expanded_points = 0;
    for (const auto& r : ds.runs) {
      if (r.count > 100000) continue;
      ++runs_expanded;
      for (const auto& pt : fc::run_points(r, ds.step)) {
        ++expanded_points;
        all.insert(pt);
        const fc::Rational dx = pt.first - fc::Rational(r.x), dy = pt.second - fc::Rational(r.y);
        if (dx * dx + dy * dy > ds.delta * ds.delta) ++failures;
        if (fc::Rational(pt.first.get_den()) > bound_den || fc::Rational(pt.second.get_den()) > bound_den) ++failures;
      }
    }
    if (all.size() != expanded_points) ++failures;
    // Find an independent pick for the witness lines.
    std::vector<std::size_t> sel;
    for (std::size_t j0 = 0; j0 < 4 && sel.empty(); ++j0)
      for (std::size_t j1 = 0; j1 < 4 && sel.empty(); ++j1)
        if (g.is_independent({inst.vertex_at(0, j0), inst.vertex_at(1, j1)})) sel = {j0, j1};
    const auto lines = fc::independent_set_to_lines(inst, sel);
    const fc::Rational before = fc::exact_solution_cost(inst, lines);
    const fc::Rational after = fc::desanitized_cost(ds, lines);
    fc::Rational diff = after - before;
    if (diff < 0) diff = -diff;
    if (!(diff < 1)) ++failures;
    worst = fmt("%.3g", diff.get_d());
  }
  const double t = seconds_since(t0);
  return {failures == 0 && t < 60,
          std::to_string(failures) + " contract violations, " + std::to_string(runs_expanded) +
              " runs expanded, last |cost change| = " + worst + ", " + fmt("%.2f", t) + " s"};
}

// 11. Consistent partitions grow polynomially.
Outcome c11() {
  const auto t0 = Clock::now();
  std::vector<double> xs, ys;
  std::ostringstream counts;
  bool exp_growth = true;
  for (std::size_t n = 6; n <= 12; ++n) {
    const auto cloud = fc::gen::uniform_cloud(n, 2, 11000 + n);
    const auto c = fc::count_consistent_partitions(cloud, 2, 1);
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(static_cast<double>(std::max<std::uint64_t>(c, 1))));
    counts << (n == 6 ? "" : ",") << c;
    // S(n, 2) = 2^(n-1) - 1 doubles at every step.
    if (n > 6) exp_growth = exp_growth && fc::stirling2(n, 2) == 2 * fc::stirling2(n - 1, 2) + 1;
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
  const double slope = sxy / sxx;
  const double t = seconds_since(t0);
  return {slope <= 8 && exp_growth && t < 600,
          "counts n=6..12: " + counts.str() + ", log-log slope " + fmt("%.3f", slope) + ", S(n,2) doubling " +
              (exp_growth ? "yes" : "no") + ", " + fmt("%.2f", t) + " s"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> all = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= 11; ++i) which.push_back(i);
  bool ok = true;
  for (int w : which) {
    if (w < 1 || w > 11) {
      std::cerr << "no criterion " << w << "\n";
      return 2;
    }
    Outcome o;
    try {
      o = all[static_cast<std::size_t>(w - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << w << ": " << (o.pass ? "PASS" : "FAIL") << "  (" << o.detail << ")" << std::endl;
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
