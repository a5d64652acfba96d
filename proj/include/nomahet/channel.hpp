#pragma once

#include <complex>
#include <vector>

#include "nomahet/config.hpp"
#include "nomahet/rng.hpp"
#include "nomahet/topology.hpp"

namespace nomahet {

// Block-fading gains between every transmitter and every user, per sub-band.
// gain = |f|^2 * large_scale, with f a unit-variance complex Gaussian fading
// coefficient drawn independently per (tx, user, band) and large_scale the
// distance/wall-loss attenuation (band-independent).
//
// The *_est members hold the estimated channel: identical to the true one
// when the estimation error variance is zero, otherwise recomputed from
// f_est = f + e with e ~ CN(0, error_var).
struct ChannelRealization {
  int n_tx = 0;
  int n_users = 0;
  int n_bands = 0;
  double noise_power_w = 0.0;

  std::vector<double> large_scale;                 // [tx][user]
  std::vector<std::complex<double>> fading_true;   // [tx][user][band]
  std::vector<std::complex<double>> fading_est;
  std::vector<double> gain_true_;                  // [tx][user][band]
  std::vector<double> gain_est_;

  int ls_index(int tx, int user) const { return tx * n_users + user; }
  int index(int tx, int user, int band) const {
    return (tx * n_users + user) * n_bands + band;
  }

  double gain_true(int tx, int user, int band) const {
    return gain_true_[index(tx, user, band)];
  }
  double gain_est(int tx, int user, int band) const {
    return gain_est_[index(tx, user, band)];
  }
  double gain(int tx, int user, int band, bool use_estimated) const {
    return use_estimated ? gain_est(tx, user, band)
                         : gain_true(tx, user, band);
  }
};

// Draws fading for every (tx, user, band) and combines it with path loss and
// wall loss. Wall loss applies on cross-tier links only: MBS->SUE and
// SBS->MUE. The estimated channel starts out equal to the true one.
ChannelRealization sample_channels(const NetworkConfig& cfg,
                                   const Topology& topo, RandomStream& rng);

// Populates the estimated channel with f_est = f + e, e ~ CN(0, error_var),
// and recomputes estimated gains. The true channel is left untouched.
// error_var == 0 reproduces the true channel exactly.
void estimate_csi(ChannelRealization& chan, double error_var,
                  RandomStream& rng);

}  // namespace nomahet
