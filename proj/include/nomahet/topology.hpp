#pragma once

#include <cmath>
#include <vector>

#include "nomahet/config.hpp"
#include "nomahet/rng.hpp"

namespace nomahet {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Node placement for one trial. The MBS sits at the origin; SBS and MUE
// positions are uniform in the macro disk, SUEs uniform in their cell disk.
struct Topology {
  Vec2 mbs;
  std::vector<Vec2> sbs;                // per cell
  std::vector<Vec2> mues;               // per MUE
  std::vector<std::vector<Vec2>> sues;  // [cell][f]
};

// Draws a topology. SBS positions are rejection-sampled to keep a minimum
// pairwise separation of 2 * small_radius_m; throws ConfigError if the
// separation cannot be met within the retry budget.
Topology generate_topology(const NetworkConfig& cfg, RandomStream& rng);

}  // namespace nomahet
