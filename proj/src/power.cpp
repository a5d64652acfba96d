#include "nomahet/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "nomahet/errors.hpp"
#include "nomahet/math.hpp"

namespace nomahet {

PowerAllocation equal_power(const NetworkConfig& cfg,
                            const Assignment& assign) {
  PowerAllocation alloc(cfg.n_users(), cfg.n_bands());
  const double p_sue = cfg.sbs_band_power_w() / cfg.sues_per_cell;
  for (int b = 0; b < cfg.n_bands(); ++b) {
    const int cell = assign.cell_of_band[b];
    for (int f = 0; f < cfg.sues_per_cell; ++f) {
      alloc.at(sue_index(cfg, cell, f), b) = p_sue;
    }
    const auto& mues = assign.mues_of_band[b];
    if (!mues.empty()) {
      const double p_mue = cfg.mbs_band_budget_w() / mues.size();
      for (int m : mues) alloc.at(m, b) = p_mue;
    }
  }
  return alloc;
}

namespace {

// Splits one transmitter's per-band budget across its users with weights
// g^(-alpha), g the estimated serving gain over noise.
void ftpa_split(const NetworkConfig& cfg, const ChannelRealization& chan,
                int band, const std::vector<int>& users, double budget,
                PowerAllocation& alloc) {
  if (users.empty()) return;
  std::vector<double> w(users.size());
  double total = 0.0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    const int u = users[i];
    const double g =
        chan.gain_est(serving_tx(cfg, u), u, band) / chan.noise_power_w;
    w[i] = std::pow(g, -cfg.ftpa_alpha);
    total += w[i];
  }
  for (std::size_t i = 0; i < users.size(); ++i) {
    alloc.at(users[i], band) = budget * w[i] / total;
  }
}

}  // namespace

PowerAllocation ftpa(const NetworkConfig& cfg, const Assignment& assign,
                     const ChannelRealization& chan) {
  PowerAllocation alloc(cfg.n_users(), cfg.n_bands());
  std::vector<int> sues(cfg.sues_per_cell);
  for (int b = 0; b < cfg.n_bands(); ++b) {
    const int cell = assign.cell_of_band[b];
    for (int f = 0; f < cfg.sues_per_cell; ++f) {
      sues[f] = sue_index(cfg, cell, f);
    }
    ftpa_split(cfg, chan, b, sues, cfg.sbs_band_power_w(), alloc);
    ftpa_split(cfg, chan, b, assign.mues_of_band[b], cfg.mbs_band_budget_w(),
               alloc);
  }
  return alloc;
}

std::vector<double> outage_min_power(const NetworkConfig& cfg,
                                     const Assignment& assign,
                                     const ChannelRealization& chan,
                                     const PowerAllocation& tentative) {
  const double noise = chan.noise_power_w;
  const double sinr_target =
      std::exp2(cfg.rate_min_bps / cfg.band_width_hz()) - 1.0;
  const double var = cfg.csi_error_var;

  std::vector<double> p_min(cfg.n_users(), 0.0);
  for (int b = 0; b < cfg.n_bands(); ++b) {
    const int band_cell = assign.cell_of_band[b];
    double mbs_ahead = 0.0;  // stronger users' powers per transmitter
    double sbs_ahead = 0.0;
    for (int u : assign.sic_order[b]) {
      const int tx = serving_tx(cfg, u);

      double gain_quantile;
      if (var == 0.0) {
        gain_quantile = chan.gain_est(tx, u, b);
      } else {
        const double f2 = std::norm(chan.fading_est[chan.index(tx, u, b)]);
        const double half_var = 0.5 * var;
        const double lambda = f2 / half_var;
        gain_quantile = half_var *
                        ncx2_quantile(cfg.outage_eps, lambda) *
                        chan.large_scale[chan.ls_index(tx, u)];
      }
      const double interference =
          mbs_ahead * chan.gain_est(kMbsTx, u, b) +
          sbs_ahead * chan.gain_est(sbs_tx(band_cell), u, b);
      p_min[u] = sinr_target * (noise + interference) / gain_quantile;
      if (is_mue(cfg, u)) {
        mbs_ahead += tentative.at(u, b);
      } else {
        sbs_ahead += tentative.at(u, b);
      }
    }

    // Feasibility: the floors must fit each transmitter's per-band budget.
    double sbs_floor = 0.0;
    const int cell = assign.cell_of_band[b];
    for (int f = 0; f < cfg.sues_per_cell; ++f) {
      sbs_floor += p_min[sue_index(cfg, cell, f)];
    }
    if (sbs_floor > cfg.sbs_band_power_w()) {
      throw InfeasibleOutageError("SUE power floors exceed cell budget on band " +
                                  std::to_string(b));
    }
    double mbs_floor = 0.0;
    for (int m : assign.mues_of_band[b]) mbs_floor += p_min[m];
    if (mbs_floor > cfg.mbs_band_budget_w()) {
      throw InfeasibleOutageError(
          "MUE power floors exceed macro budget on band " + std::to_string(b));
    }
  }
  return p_min;
}

namespace {

// Per-band linear terms of the scaled-FTPA rate: with powers theta * p,
// SINR_u(theta) = theta * s_u / (noise + theta * i_u).
struct ScaledTerm {
  double signal;
  double interference;
};

std::vector<ScaledTerm> collect_terms(const NetworkConfig& cfg,
                                      const Assignment& assign,
                                      const ChannelRealization& chan,
                                      const PowerAllocation& full_budget) {
  std::vector<ScaledTerm> terms;
  for (int b = 0; b < cfg.n_bands(); ++b) {
    const int cell = assign.cell_of_band[b];
    double mbs_ahead = 0.0;
    double sbs_ahead = 0.0;
    for (int u : assign.sic_order[b]) {
      const double own = chan.gain_est(serving_tx(cfg, u), u, b);
      const double interference =
          mbs_ahead * chan.gain_est(kMbsTx, u, b) +
          sbs_ahead * chan.gain_est(sbs_tx(cell), u, b);
      terms.push_back({full_budget.at(u, b) * own, interference});
      if (is_mue(cfg, u)) {
        mbs_ahead += full_budget.at(u, b);
      } else {
        sbs_ahead += full_budget.at(u, b);
      }
    }
  }
  return terms;
}

double ee_from_terms(const NetworkConfig& cfg,
                     const std::vector<ScaledTerm>& terms, double spend,
                     double noise, double theta) {
  double rate = 0.0;
  for (const ScaledTerm& t : terms) {
    rate += cfg.band_width_hz() *
            std::log2(1.0 + theta * t.signal / (noise + theta * t.interference));
  }
  const double circuit = cfg.n_bands() * cfg.circuit_power_per_band_w;
  return rate / (circuit + theta * spend);
}

}  // namespace

double ee_at_scale(const NetworkConfig& cfg, const Assignment& assign,
                   const ChannelRealization& chan,
                   const PowerAllocation& full_budget, double theta) {
  const auto terms = collect_terms(cfg, assign, chan, full_budget);
  return ee_from_terms(cfg, terms, full_budget.total(), chan.noise_power_w,
                       theta);
}

PowerAllocation ee_power_bisection(const NetworkConfig& cfg,
                                   const Assignment& assign,
                                   const ChannelRealization& chan,
                                   const std::vector<double>& p_min,
                                   double* theta_star) {
  PowerAllocation base = ftpa(cfg, assign, chan);

  double theta_min = 0.0;
  for (int u = 0; u < cfg.n_users(); ++u) {
    if (p_min[u] <= 0.0) continue;
    for (int b = 0; b < cfg.n_bands(); ++b) {
      if (base.at(u, b) > 0.0) {
        theta_min = std::max(theta_min, p_min[u] / base.at(u, b));
      }
    }
  }
  if (theta_min > 1.0) {
    throw InfeasibleOutageError("power floors need scale " +
                                std::to_string(theta_min) +
                                " of the full budget");
  }

  const auto terms = collect_terms(cfg, assign, chan, base);
  const double spend = base.total();
  const double noise = chan.noise_power_w;
  auto ee = [&](double theta) {
    return ee_from_terms(cfg, terms, spend, noise, theta);
  };
  // Central finite difference, clamped to theta >= 0 at the lower edge.
  const double h = 1e-6;
  auto dee = [&](double theta) {
    const double lo = std::max(theta - h, 0.0);
    const double hi = theta + h;
    return (ee(hi) - ee(lo)) / (hi - lo);
  };

  double theta = theta_min;
  if (dee(theta_min) <= 0.0) {
    theta = theta_min;  // floors binding
  } else if (dee(1.0) >= 0.0) {
    theta = 1.0;  // spend the full budget
  } else {
    double lo = theta_min, hi = 1.0;
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      if (dee(mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    theta = 0.5 * (lo + hi);
  }

  // The optimum must dominate both endpoints even if EE(theta) misbehaves.
  double best = theta;
  for (double cand : {theta_min, 1.0}) {
    if (ee(cand) > ee(best)) best = cand;
  }
  if (theta_star) *theta_star = best;

  for (double& v : base.p) v *= best;
  return base;
}

}  // namespace nomahet
