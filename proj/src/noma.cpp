#include "nomahet/noma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nomahet {

std::vector<int> band_users(const NetworkConfig& cfg, const Assignment& assign,
                            int band) {
  std::vector<int> users;
  const int cell = assign.cell_of_band[band];
  for (int f = 0; f < cfg.sues_per_cell; ++f) {
    users.push_back(sue_index(cfg, cell, f));
  }
  users.insert(users.end(), assign.mues_of_band[band].begin(),
               assign.mues_of_band[band].end());
  return users;
}

std::vector<int> sic_order(const NetworkConfig& cfg, int band,
                           const Assignment& assign,
                           const ChannelRealization& chan,
                           bool use_estimated) {
  std::vector<int> users = band_users(cfg, assign, band);
  const double noise = chan.noise_power_w;
  std::sort(users.begin(), users.end(), [&](int a, int b) {
    const double ga = chan.gain(serving_tx(cfg, a), a, band, use_estimated) / noise;
    const double gb = chan.gain(serving_tx(cfg, b), b, band, use_estimated) / noise;
    if (ga != gb) return ga > gb;
    return a < b;
  });
  return users;
}

double sinr(const NetworkConfig& cfg, int user, int band,
            const Assignment& assign, const PowerAllocation& power,
            const ChannelRealization& chan, bool use_estimated) {
  const std::vector<int>& order = assign.sic_order[band];
  double interference = 0.0;
  bool found = false;
  for (int v : order) {
    if (v == user) {
      found = true;
      break;
    }
    // v ranks stronger than user, so its signal cannot be cancelled here;
    // it arrives through the link from v's transmitter to this user.
    interference += power.at(v, band) *
                    chan.gain(serving_tx(cfg, v), user, band, use_estimated);
  }
  if (!found) throw std::logic_error("sinr: user not scheduled on band");
  const double signal =
      power.at(user, band) *
      chan.gain(serving_tx(cfg, user), user, band, use_estimated);
  return signal / (chan.noise_power_w + interference);
}

double user_rate(const NetworkConfig& cfg, int user, int band,
                 const Assignment& assign, const PowerAllocation& power,
                 const ChannelRealization& chan, bool use_estimated) {
  const double s = sinr(cfg, user, band, assign, power, chan, use_estimated);
  return cfg.band_width_hz() * std::log2(1.0 + s);
}

TrialReport energy_efficiency(const NetworkConfig& cfg,
                              const Assignment& assign,
                              const PowerAllocation& power,
                              const ChannelRealization& chan,
                              bool use_estimated) {
  assign.validate(cfg);
  power.validate(cfg, assign);

  TrialReport report;
  const int n_users = cfg.n_users();
  report.rate_bps.assign(n_users, 0.0);
  report.scheduled.assign(n_users, 0);
  report.outage_flags.assign(n_users, 0);

  for (int b = 0; b < cfg.n_bands(); ++b) {
    for (int u : assign.sic_order[b]) {
      const double r = user_rate(cfg, u, b, assign, power, chan, use_estimated);
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
