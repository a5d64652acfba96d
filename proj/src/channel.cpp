#include "nomahet/channel.hpp"

namespace nomahet {

namespace {

// Cross-tier links carry the wall penetration loss: the macro BS into a
// small-cell user, or a small-cell BS out to a macro user.
bool cross_tier(const NetworkConfig& cfg, int tx, int user) {
  const bool user_is_mue = is_mue(cfg, user);
  if (tx == kMbsTx) return !user_is_mue;
  return user_is_mue;
}

Vec2 user_position(const NetworkConfig& cfg, const Topology& topo, int user) {
  if (is_mue(cfg, user)) return topo.mues[user];
  const int cell = sue_cell(cfg, user);
  const int f = user - sue_index(cfg, cell, 0);
  return topo.sues[cell][f];
}

}  // namespace

ChannelRealization sample_channels(const NetworkConfig& cfg,
                                   const Topology& topo, RandomStream& rng) {
  cfg.validate();

  ChannelRealization chan;
  chan.n_tx = cfg.n_tx();
  chan.n_users = cfg.n_users();
  chan.n_bands = cfg.n_bands();
  chan.noise_power_w = cfg.noise_power_w();

  const std::size_t n_links =
      static_cast<std::size_t>(chan.n_tx) * chan.n_users;
  const std::size_t n_entries = n_links * chan.n_bands;
  chan.large_scale.resize(n_links);
  chan.fading_true.resize(n_entries);
  chan.gain_true_.resize(n_entries);

  for (int tx = 0; tx < chan.n_tx; ++tx) {
    const Vec2 tx_pos = (tx == kMbsTx) ? topo.mbs : topo.sbs[tx - 1];
    const PathLossModel& pl =
        (tx == kMbsTx) ? cfg.pathloss_macro : cfg.pathloss_small;
    for (int u = 0; u < chan.n_users; ++u) {
      const double d = distance(tx_pos, user_position(cfg, topo, u));
      double loss_db = pl.at_distance_m(d);
      if (cross_tier(cfg, tx, u)) loss_db += cfg.wall_loss_db;
      const double ls = std::pow(10.0, -loss_db / 10.0);
      chan.large_scale[chan.ls_index(tx, u)] = ls;
      for (int b = 0; b < chan.n_bands; ++b) {
        const std::complex<double> f = rng.cnormal(1.0);
        const std::size_t i = chan.index(tx, u, b);
        chan.fading_true[i] = f;
        chan.gain_true_[i] = std::norm(f) * ls;
      }
    }
  }

  // Until estimate_csi runs, the estimated channel equals the true one.
  chan.fading_est = chan.fading_true;
  chan.gain_est_ = chan.gain_true_;
  return chan;
}

void estimate_csi(ChannelRealization& chan, double error_var,
                  RandomStream& rng) {
  if (error_var < 0.0 || error_var >= 1.0) {
    throw ConfigError("csi error variance must be in [0, 1)");
  }
  if (error_var == 0.0) {
    chan.fading_est = chan.fading_true;
    chan.gain_est_ = chan.gain_true_;
    return;
  }
  chan.fading_est.resize(chan.fading_true.size());
  chan.gain_est_.resize(chan.gain_true_.size());
  for (int tx = 0; tx < chan.n_tx; ++tx) {
    for (int u = 0; u < chan.n_users; ++u) {
      const double ls = chan.large_scale[chan.ls_index(tx, u)];
      for (int b = 0; b < chan.n_bands; ++b) {
        const std::size_t i = chan.index(tx, u, b);
        const std::complex<double> f_est =
            chan.fading_true[i] + rng.cnormal(error_var);
        chan.fading_est[i] = f_est;
        chan.gain_est_[i] = std::norm(f_est) * ls;
      }
    }
  }
}

}  // namespace nomahet
