#include "nomahet/ofdma.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nomahet/scheduling.hpp"

namespace nomahet {

void OfdmaAssignment::validate(const NetworkConfig& cfg) const {
  if (static_cast<int>(kind.size()) != cfg.n_bands() ||
      static_cast<int>(owner.size()) != cfg.n_bands()) {
    throw std::logic_error("ofdma assignment has wrong band count");
  }
  std::vector<int> cell_seen(cfg.n_small_cells, 0);
  std::vector<int> mue_seen(cfg.n_mues, 0);
  for (int b = 0; b < cfg.n_bands(); ++b) {
    switch (kind[b]) {
      case OwnerKind::SmallCell:
        if (cell_seen[owner[b]]++) {
          throw std::logic_error("cell owns two bands");
        }
        break;
      case OwnerKind::Mue:
        if (mue_seen[owner[b]]++) {
          throw std::logic_error("MUE owns two bands");
        }
        break;
      case OwnerKind::None:
        break;
    }
  }
}

OfdmaAssignment ofdma_schedule(const NetworkConfig& cfg,
                               const ChannelRealization& chan) {
  const int k = cfg.n_bands();
  const int n_owners = cfg.n_small_cells + cfg.n_mues;

  // Owner o on band b: cells first (representative gain), then MUEs
  // (serving-link gain). Greedy max over unassigned (owner, band) pairs.
  auto owner_gain = [&](int o, int b) {
    if (o < cfg.n_small_cells) return cell_band_gain(cfg, chan, o, b);
    return chan.gain_est(kMbsTx, o - cfg.n_small_cells, b);
  };

  OfdmaAssignment assign;
  assign.kind.assign(k, OwnerKind::None);
  assign.owner.assign(k, -1);

  std::vector<bool> owner_done(n_owners, false), band_done(k, false);
  for (int round = 0; round < k; ++round) {
    int best_o = -1, best_b = -1;
    double best = -1.0;
    for (int o = 0; o < n_owners; ++o) {
      if (owner_done[o]) continue;
      for (int b = 0; b < k; ++b) {
        if (band_done[b]) continue;
        const double g = owner_gain(o, b);
        if (g > best) {
          best = g;
          best_o = o;
          best_b = b;
        }
      }
    }
    if (best_o < 0) break;  // M == 0 cannot reach this; cells cover K bands
    owner_done[best_o] = true;
    band_done[best_b] = true;
    if (best_o < cfg.n_small_cells) {
      assign.kind[best_b] = OwnerKind::SmallCell;
      assign.owner[best_b] = best_o;
    } else {
      assign.kind[best_b] = OwnerKind::Mue;
      assign.owner[best_b] = best_o - cfg.n_small_cells;
    }
  }
  assign.validate(cfg);
  return assign;
}

PowerAllocation ofdma_equal_power(const NetworkConfig& cfg,
                                  const OfdmaAssignment& assign) {
  PowerAllocation alloc(cfg.n_users(), cfg.n_bands());
  const double p_sue = cfg.sbs_band_power_w() / cfg.sues_per_cell;
  for (int b = 0; b < cfg.n_bands(); ++b) {
    if (assign.kind[b] == OwnerKind::SmallCell) {
      for (int f = 0; f < cfg.sues_per_cell; ++f) {
        alloc.at(sue_index(cfg, assign.owner[b], f), b) = p_sue;
      }
    } else if (assign.kind[b] == OwnerKind::Mue) {
      alloc.at(assign.owner[b], b) = cfg.mbs_band_budget_w();
    }
  }
  return alloc;
}

TrialReport ofdma_rates(const NetworkConfig& cfg,
                        const OfdmaAssignment& assign,
                        const PowerAllocation& power,
                        const ChannelRealization& chan) {
  assign.validate(cfg);

  TrialReport report;
  const int n_users = cfg.n_users();
  report.rate_bps.assign(n_users, 0.0);
  report.scheduled.assign(n_users, 0);
  report.outage_flags.assign(n_users, 0);

  const double noise = chan.noise_power_w;
  for (int b = 0; b < cfg.n_bands(); ++b) {
    if (assign.kind[b] == OwnerKind::SmallCell) {
      const int cell = assign.owner[b];
      // The band splits into F orthogonal slices, one per SUE, each with a
      // proportional share of the band noise.
      const double slice_hz = cfg.band_width_hz() / cfg.sues_per_cell;
      const double slice_noise = noise / cfg.sues_per_cell;
      for (int f = 0; f < cfg.sues_per_cell; ++f) {
        const int u = sue_index(cfg, cell, f);
        const double snr =
            power.at(u, b) * chan.gain_true(sbs_tx(cell), u, b) / slice_noise;
        const double r = slice_hz * std::log2(1.0 + snr);
        report.rate_bps[u] = r;
        report.scheduled[u] = 1;
        report.outage_flags[u] = r < cfg.rate_min_bps ? 1 : 0;
        report.sum_rate_bps += r;
      }
    } else if (assign.kind[b] == OwnerKind::Mue) {
      const int u = assign.owner[b];
      const double snr = power.at(u, b) * chan.gain_true(kMbsTx, u, b) / noise;
      const double r = cfg.band_width_hz() * std::log2(1.0 + snr);
      report.rate_bps[u] = r;
      report.scheduled[u] = 1;
      report.outage_flags[u] = r < cfg.rate_min_bps ? 1 : 0;
      report.sum_rate_bps += r;
    }
  }
  report.tx_power_w = power.total();
  report.circuit_power_w = cfg.n_bands() * cfg.circuit_power_per_band_w;
  const double denom = report.tx_power_w + report.circuit_power_w;
  report.ee_bits_per_joule = denom > 0.0 ? report.sum_rate_bps / denom : 0.0;
  return report;
}

}  // namespace nomahet
