// Plants three noisy lines, recovers them exactly and heuristically, and
// writes a plot of the exact solution.
//
//   demo_planted [seed] [out.svg]

#include <cstdio>
#include <cstdlib>
#include <string>

#include "flatcover/clustering/exact.hpp"
#include "flatcover/clustering/heuristic.hpp"
#include "flatcover/core/cost.hpp"
#include "flatcover/io/generators.hpp"
#include "flatcover/io/json.hpp"
#include "flatcover/io/svg.hpp"

namespace fc = flatcover;

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  const std::string out = argc > 2 ? argv[2] : "planted.svg";

  fc::gen::PlantedSpec ps;
  const auto p = fc::gen::planted(ps, seed);
  const double planted_cost = fc::total_cost(p.cloud, p.flats);

  const auto exact = fc::solve_exact(p.cloud, ps.k, ps.r);
  fc::HeuristicConfig cfg;
  cfg.rng_seed = seed;
  const auto heur = fc::solve_heuristic(p.cloud, ps.k, ps.r, cfg);

  // Same partition up to relabelling?
  std::vector<int> map(ps.k, -1);
  bool recovered = true;
  for (std::size_t i = 0; i < p.labels.size() && recovered; ++i) {
    int& m = map[p.labels[i]];
    if (m < 0) m = static_cast<int>(exact.solution.assignment[i]);
    recovered = m == static_cast<int>(exact.solution.assignment[i]);
  }

  std::printf("points            %zu\n", p.cloud.size());
  std::printf("planted lines     %.6g\n", planted_cost);
  std::printf("exact             %.6g  (%llu leaves, %llu pruned)\n", exact.solution.cost,
              static_cast<unsigned long long>(exact.leaves), static_cast<unsigned long long>(exact.pruned));
  std::printf("heuristic         %.6g\n", heur.cost);
  std::printf("partition         %s\n", recovered ? "recovered" : "differs");
  fc::io::write_text(out, fc::io::plot_svg(p.cloud, exact.solution.flats));
  std::printf("plot              %s\n", out.c_str());
}
