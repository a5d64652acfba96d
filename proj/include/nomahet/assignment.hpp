#pragma once

#include <cstdint>
#include <vector>

#include "nomahet/config.hpp"

namespace nomahet {

// Which small cell and which MUEs occupy each sub-band, plus the successive
// interference cancellation order per band (strongest user first).
struct Assignment {
  std::vector<int> cell_of_band;               // band -> cell, a bijection
  std::vector<std::vector<int>> mues_of_band;  // band -> MUE user ids
  std::vector<std::vector<int>> sic_order;     // band -> user ids, strongest
                                               // serving link first

  int band_of_cell(int cell) const {
    for (int b = 0; b < static_cast<int>(cell_of_band.size()); ++b) {
      if (cell_of_band[b] == cell) return b;
    }
    return -1;
  }

  // Band carrying the given MUE, or -1 if it is unscheduled.
  int band_of_mue(int user) const {
    for (int b = 0; b < static_cast<int>(mues_of_band.size()); ++b) {
      for (int m : mues_of_band[b]) {
        if (m == user) return b;
      }
    }
    return -1;
  }

  // Checks bijection, per-band MUE cap and MUE uniqueness.
  void validate(const NetworkConfig& cfg) const;
};

// Transmit power per (user, band) from the user's serving transmitter.
// Dense storage; entries off a user's band are zero.
struct PowerAllocation {
  int n_users = 0;
  int n_bands = 0;
  std::vector<double> p;  // [user][band]

  PowerAllocation() = default;
  PowerAllocation(int users, int bands)
      : n_users(users), n_bands(bands),
        p(static_cast<std::size_t>(users) * bands, 0.0) {}

  double& at(int user, int band) { return p[user * n_bands + band]; }
  double at(int user, int band) const { return p[user * n_bands + band]; }

  double total() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
  }

  // Verifies per-band and per-tier budgets against the config; throws
  // std::logic_error on violation (these are internal contracts).
  void validate(const NetworkConfig& cfg, const Assignment& assign) const;
};

// Realized outcome of one Monte Carlo trial.
struct TrialReport {
  std::vector<double> rate_bps;        // per user, zero when unscheduled
  std::vector<std::uint8_t> scheduled; // per user
  std::vector<std::uint8_t> outage_flags;  // rate below floor, scheduled only
  double sum_rate_bps = 0.0;
  double tx_power_w = 0.0;
  double circuit_power_w = 0.0;
  double ee_bits_per_joule = 0.0;
  bool infeasible = false;  // outage floors exceeded a budget; rates zeroed

  int scheduled_count() const {
    int n = 0;
    for (auto s : scheduled) n += s;
    return n;
  }
  double outage_fraction() const {
    int n = 0, o = 0;
    for (std::size_t u = 0; u < scheduled.size(); ++u) {
      if (scheduled[u]) {
        ++n;
        o += outage_flags[u];
      }
    }
    return n > 0 ? static_cast<double>(o) / n : 0.0;
  }
};

}  // namespace nomahet
