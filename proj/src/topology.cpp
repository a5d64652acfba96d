#include "nomahet/topology.hpp"

#include <numbers>
#include <string>

namespace nomahet {

namespace {

Vec2 uniform_in_disk(const Vec2& center, double radius, RandomStream& rng) {
  const double r = radius * std::sqrt(rng.uniform());
  const double t = 2.0 * std::numbers::pi * rng.uniform();
  return {center.x + r * std::cos(t), center.y + r * std::sin(t)};
}

}  // namespace

Topology generate_topology(const NetworkConfig& cfg, RandomStream& rng) {
  cfg.validate();

  Topology topo;
  topo.mbs = {0.0, 0.0};

  // SBS placement with minimum pairwise separation of one cell diameter,
  // so cells cannot degenerate into overlapping deployments. Rejection
  // sampling with a bounded budget.
  const double min_sep = 2.0 * cfg.small_radius_m;
  const int budget = 2000 * cfg.n_small_cells;
  int draws = 0;
  topo.sbs.reserve(cfg.n_small_cells);
  while (static_cast<int>(topo.sbs.size()) < cfg.n_small_cells) {
    if (++draws > budget) {
      throw ConfigError(
          "could not place " + std::to_string(cfg.n_small_cells) +
          " small cells with separation " + std::to_string(min_sep) +
          " m inside macro radius " + std::to_string(cfg.macro_radius_m) +
          " m");
    }
    const Vec2 cand = uniform_in_disk(topo.mbs, cfg.macro_radius_m, rng);
    bool ok = true;
    for (const Vec2& placed : topo.sbs) {
      if (distance(cand, placed) < min_sep) {
        ok = false;
        break;
      }
    }
    if (ok) topo.sbs.push_back(cand);
  }

  topo.mues.reserve(cfg.n_mues);
  for (int m = 0; m < cfg.n_mues; ++m) {
    topo.mues.push_back(uniform_in_disk(topo.mbs, cfg.macro_radius_m, rng));
  }

  topo.sues.resize(cfg.n_small_cells);
  for (int k = 0; k < cfg.n_small_cells; ++k) {
    topo.sues[k].reserve(cfg.sues_per_cell);
    for (int f = 0; f < cfg.sues_per_cell; ++f) {
      topo.sues[k].push_back(
          uniform_in_disk(topo.sbs[k], cfg.small_radius_m, rng));
    }
  }
  return topo;
}

}  // namespace nomahet
