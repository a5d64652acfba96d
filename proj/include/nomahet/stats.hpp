#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "nomahet/rng.hpp"

namespace nomahet {

inline double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Standard error of the sample mean.
inline double stderr_of_mean(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / (static_cast<double>(n) * (n - 1)));
}

// Bootstrap estimate of Pr(mean(a) > mean(b)) under resampling of both
// samples. Deterministic for a fixed seed.
inline double bootstrap_prob_mean_greater(const std::vector<double>& a,
                                          const std::vector<double>& b,
                                          int resamples, std::uint64_t seed) {
  if (a.empty() || b.empty()) return 0.0;
  RandomStream rng(seed);
  int wins = 0;
  for (int r = 0; r < resamples; ++r) {
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sa += a[static_cast<std::size_t>(rng.uniform() * a.size())];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      sb += b[static_cast<std::size_t>(rng.uniform() * b.size())];
    }
    if (sa / a.size() > sb / b.size()) ++wins;
  }
  return static_cast<double>(wins) / resamples;
}

}  // namespace nomahet
