#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "nomahet/errors.hpp"

namespace nomahet {

// Log-distance path loss: PL(d) = intercept + exponent * log10(d_km), in dB.
// Distances below 1 m are clamped so gains stay finite.
struct PathLossModel {
  double intercept_db = 0.0;
  double exponent_db_decade = 0.0;

  double at_distance_m(double d_m) const {
    const double d_km = std::max(d_m, 1.0) / 1000.0;
    return intercept_db + exponent_db_decade * std::log10(d_km);
  }
};

// One transmitter index space covers the macro BS and every small-cell BS.
inline constexpr int kMbsTx = 0;
inline int sbs_tx(int cell) { return 1 + cell; }

// Full scenario description. Every field has a default; a JSON config
// document may override any subset of them.
struct NetworkConfig {
  int n_small_cells = 4;    // K: small cells, one sub-band each
  int n_mues = 8;           // M: macro users
  int sues_per_cell = 2;    // F: users per small cell

  double bandwidth_hz = 10.0e6;          // B, shared by the K sub-bands
  double total_power_w = 20.0;           // P_s, system transmit budget
  double circuit_power_per_band_w = 0.1; // P_c per sub-band

  double macro_radius_m = 300.0;
  double small_radius_m = 30.0;
  PathLossModel pathloss_macro{128.1, 37.6};
  // Deep-indoor small cells: the serving link carries ~16 dB of in-home
  // penetration on top of the usual femto law, which keeps the two tiers'
  // gains on an overlapping scale.
  PathLossModel pathloss_small{157.0, 36.7};
  double wall_loss_db = 40.0;       // applied on cross-tier links only
  double noise_psd_dbm_hz = -174.0;

  double csi_error_var = 0.0;       // variance of the estimation error on
                                    // the unit-variance fading coefficient
  int max_mues_per_band = 2;        // L_max
  double ftpa_alpha = 0.4;          // FTPA decay factor, 0 = equal split
  double rate_min_bps = 1.0e5;      // QoS rate floor
  double outage_eps = 0.1;          // tolerated outage probability
  std::uint64_t seed = 1;

  int n_bands() const { return n_small_cells; }
  int n_users() const { return n_mues + n_small_cells * sues_per_cell; }
  int n_tx() const { return 1 + n_small_cells; }
  double band_width_hz() const { return bandwidth_hz / n_small_cells; }

  // The macro tier and the small-cell tier each hold half the system budget;
  // both split evenly across the K sub-bands.
  double sbs_band_power_w() const {
    return total_power_w / (2.0 * n_small_cells);
  }
  double mbs_band_budget_w() const {
    return total_power_w / (2.0 * n_small_cells);
  }

  double noise_power_w() const {
    return std::pow(10.0, (noise_psd_dbm_hz - 30.0) / 10.0) * band_width_hz();
  }

  void validate() const;  // throws ConfigError on any invariant violation
};

// User index space: MUEs first (0..M-1), then SUEs cell-major.
inline bool is_mue(const NetworkConfig& cfg, int user) {
  return user < cfg.n_mues;
}
inline int sue_index(const NetworkConfig& cfg, int cell, int f) {
  return cfg.n_mues + cell * cfg.sues_per_cell + f;
}
inline int sue_cell(const NetworkConfig& cfg, int user) {
  return (user - cfg.n_mues) / cfg.sues_per_cell;
}
inline int serving_tx(const NetworkConfig& cfg, int user) {
  return is_mue(cfg, user) ? kMbsTx : sbs_tx(sue_cell(cfg, user));
}

// Parse a JSON config document; unknown keys are rejected, missing keys keep
// their defaults. Throws ConfigError on malformed input.
NetworkConfig config_from_json_text(const std::string& text);

// Assign `value` to the named numeric field (used by parameter sweeps).
void apply_config_field(NetworkConfig& cfg, const std::string& field,
                        double value);

}  // namespace nomahet
