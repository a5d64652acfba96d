#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nomahet/scheduling.hpp"
#include "nomahet/topology.hpp"

using namespace nomahet;

namespace {

NetworkConfig cfg_kmf(int k, int m, int f) {
  NetworkConfig cfg;
  cfg.n_small_cells = k;
  cfg.n_mues = m;
  cfg.sues_per_cell = f;
  return cfg;
}

ChannelRealization const_chan(const NetworkConfig& cfg, double noise_w,
                              double gain = 1.0) {
  ChannelRealization chan;
  chan.n_tx = cfg.n_tx();
  chan.n_users = cfg.n_users();
  chan.n_bands = cfg.n_bands();
  chan.noise_power_w = noise_w;
  const std::size_t links = static_cast<std::size_t>(chan.n_tx) * chan.n_users;
  chan.large_scale.assign(links, 1.0);
  chan.fading_true.assign(links * chan.n_bands, {1.0, 0.0});
  chan.fading_est = chan.fading_true;
  chan.gain_true_.assign(links * chan.n_bands, gain);
  chan.gain_est_ = chan.gain_true_;
  return chan;
}

ChannelRealization sampled_chan(const NetworkConfig& cfg, int seed) {
  RandomStream rng(derive_seed(seed, {17}));
  const Topology topo = generate_topology(cfg, rng);
  ChannelRealization chan = sample_channels(cfg, topo, rng);
  estimate_csi(chan, cfg.csi_error_var, rng);
  return chan;
}

// Independent band energy-efficiency evaluator used as the eviction oracle.
double oracle_band_ee(const NetworkConfig& cfg, const ChannelRealization& chan,
                      int band, int cell, std::vector<int> mues) {
  struct Link { int u; double p; };
  std::vector<Link> links;
  for (int f = 0; f < cfg.sues_per_cell; ++f) {
    links.push_back({sue_index(cfg, cell, f),
                     cfg.sbs_band_power_w() / cfg.sues_per_cell});
  }
  for (int m : mues) {
    links.push_back({m, cfg.mbs_band_budget_w() / mues.size()});
  }
  std::sort(links.begin(), links.end(), [&](const Link& a, const Link& b) {
    const double ga = chan.gain_est(serving_tx(cfg, a.u), a.u, band);
    const double gb = chan.gain_est(serving_tx(cfg, b.u), b.u, band);
    if (ga != gb) return ga > gb;
    return a.u < b.u;
  });
  double rate = 0.0, tx = 0.0;
  for (std::size_t i = 0; i < links.size(); ++i) {
    double interference = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      interference +=
          links[j].p *
          chan.gain_est(serving_tx(cfg, links[j].u), links[i].u, band);
    }
    const double s = links[i].p *
                     chan.gain_est(serving_tx(cfg, links[i].u), links[i].u,
                                   band) /
                     (chan.noise_power_w + interference);
    rate += cfg.band_width_hz() * std::log2(1.0 + s);
    tx += links[i].p;
  }
  return rate / (tx + cfg.circuit_power_per_band_w);
}

// Reference count of feasible exhaustive candidates, by direct recursion.
std::uint64_t count_mue_maps(int k, int m_left, std::vector<int>& load,
                             int cap) {
  if (m_left == 0) return 1;
  std::uint64_t total = count_mue_maps(k, m_left - 1, load, cap);  // skip
  for (int b = 0; b < k; ++b) {
    if (load[b] == cap) continue;
    ++load[b];
    total += count_mue_maps(k, m_left - 1, load, cap);
    --load[b];
  }
  return total;
}

std::uint64_t reference_candidate_count(int k, int m, int cap) {
  std::uint64_t perms = 1;
  for (int i = 2; i <= k; ++i) perms *= i;
  std::vector<int> load(k, 0);
  return perms * count_mue_maps(k, m, load, cap);
}

}  // namespace

TEST_CASE("one cell lands on the one band") {
  const NetworkConfig cfg = cfg_kmf(1, 0, 1);
  const ChannelRealization chan = const_chan(cfg, 1e-12);
  const Assignment a = schedule_small_cells(cfg, chan);
  CHECK(a.cell_of_band == std::vector<int>{0});
}

TEST_CASE("greedy cell matching follows the highest-gain trace") {
  const NetworkConfig cfg = cfg_kmf(2, 0, 1);
  ChannelRealization chan = const_chan(cfg, 1e-12);
  const double rep[2][2] = {{9.0, 1.0}, {8.0, 2.0}};  // cell x band
  for (int c = 0; c < 2; ++c) {
    for (int b = 0; b < 2; ++b) {
      chan.gain_est_[chan.index(sbs_tx(c), sue_index(cfg, c, 0), b)] =
          rep[c][b];
    }
  }
  const Assignment a = schedule_small_cells(cfg, chan);
  // Greedy takes (cell0, band0) = 9 first, leaving (cell1, band1) = 2.
  CHECK(a.cell_of_band == std::vector<int>{0, 1});

  // Cross-check against both possible bijections: the alternative pairing
  // (cell0->band1, cell1->band0) has first pick 8 < 9, so greedy's trace is
  // exactly the one asserted.
  CHECK(rep[0][0] > rep[1][0]);
  CHECK(rep[0][0] > rep[1][1]);
}

TEST_CASE("relabeling bands permutes the matching identically") {
  const NetworkConfig cfg = cfg_kmf(4, 0, 2);
  const ChannelRealization chan = sampled_chan(cfg, 5);
  const Assignment base = schedule_small_cells(cfg, chan);

  const std::vector<int> perm{2, 0, 3, 1};  // new band id of old band b
  ChannelRealization permuted = chan;
  for (int tx = 0; tx < chan.n_tx; ++tx) {
    for (int u = 0; u < chan.n_users; ++u) {
      for (int b = 0; b < chan.n_bands; ++b) {
        permuted.gain_est_[permuted.index(tx, u, perm[b])] =
            chan.gain_est(tx, u, b);
      }
    }
  }
  const Assignment moved = schedule_small_cells(cfg, permuted);
  for (int b = 0; b < cfg.n_bands(); ++b) {
    CHECK(moved.cell_of_band[perm[b]] == base.cell_of_band[b]);
  }
}

TEST_CASE("no MUEs leaves the partial assignment unchanged") {
  const NetworkConfig cfg = cfg_kmf(3, 0, 1);
  const ChannelRealization chan = sampled_chan(cfg, 8);
  const Assignment partial = schedule_small_cells(cfg, chan);
  const Assignment full = schedule_mues(cfg, chan, partial);
  CHECK(full.cell_of_band == partial.cell_of_band);
  for (int b = 0; b < 3; ++b) CHECK(full.mues_of_band[b].empty());
}

TEST_CASE("full band keeps the energy-efficiency-max pair") {
  // One band, three MUEs, cap 2: exactly two remain and they are the pair
  // with the best band EE among the three possible pairs.
  NetworkConfig cfg = cfg_kmf(1, 3, 1);
  cfg.max_mues_per_band = 2;
  for (int seed = 0; seed < 40; ++seed) {
    const ChannelRealization chan = sampled_chan(cfg, 1000 + seed);
    const Assignment a = schedule(cfg, chan);
    REQUIRE(a.mues_of_band[0].size() == 2);

    std::vector<std::vector<int>> pairs{{0, 1}, {0, 2}, {1, 2}};
    double best = -1.0;
    std::vector<int> best_pair;
    for (auto& pr : pairs) {
      const double ee = oracle_band_ee(cfg, chan, 0, 0, pr);
      if (ee > best) {
        best = ee;
        best_pair = pr;
      }
    }
    std::vector<int> kept = a.mues_of_band[0];
    std::sort(kept.begin(), kept.end());
    CHECK(kept == best_pair);
  }
}

TEST_CASE("default cap allows two MUEs per band") {
  const NetworkConfig cfg;
  CHECK(cfg.max_mues_per_band == 2);
}

TEST_CASE("proposal count stays within M*K") {
  for (int seed = 0; seed < 30; ++seed) {
    NetworkConfig cfg = cfg_kmf(3 + seed % 3, 2 * (3 + seed % 3), 2);
    const ChannelRealization chan = sampled_chan(cfg, 300 + seed);
    MueScheduleStats stats;
    const Assignment a = schedule(cfg, chan, &stats);
    a.validate(cfg);
    CHECK(stats.proposals <= cfg.n_mues * cfg.n_bands());
  }
}

TEST_CASE("exhaustive search on the smallest instance") {
  const NetworkConfig cfg = cfg_kmf(1, 1, 1);
  const ChannelRealization chan = sampled_chan(cfg, 2);
  std::uint64_t count = 0;
  const Assignment a = exhaustive_schedule(cfg, chan, &count);
  CHECK(count == 2);  // MUE on the band or unscheduled
  a.validate(cfg);
}

TEST_CASE("exhaustive candidate count matches independent recursion") {
  NetworkConfig cfg = cfg_kmf(2, 2, 1);
  cfg.max_mues_per_band = 2;
  const ChannelRealization chan = sampled_chan(cfg, 3);
  std::uint64_t count = 0;
  exhaustive_schedule(cfg, chan, &count);
  CHECK(count == 18);  // 2! bijections x (K+1)^M maps, none clipped by caps
  CHECK(count == reference_candidate_count(2, 2, 2));

  NetworkConfig clipped = cfg_kmf(2, 3, 1);
  clipped.max_mues_per_band = 1;
  const ChannelRealization chan2 = sampled_chan(clipped, 4);
  std::uint64_t count2 = 0;
  exhaustive_schedule(clipped, chan2, &count2);
  CHECK(count2 == reference_candidate_count(2, 3, 1));
}

TEST_CASE("exhaustive search refuses oversized instances") {
  const NetworkConfig cfg = cfg_kmf(5, 2, 1);
  const ChannelRealization chan = const_chan(cfg, 1e-12);
  CHECK_THROWS_AS(exhaustive_schedule(cfg, chan, nullptr),
                  InstanceTooLargeError);
}

TEST_CASE("exhaustive dominates the two-stage scheduler on every seed") {
  for (int seed = 0; seed < 40; ++seed) {
    NetworkConfig cfg = cfg_kmf(2 + seed % 2, 1 + seed % 4, 1 + seed % 2);
    const ChannelRealization chan = sampled_chan(cfg, 50 + seed);
    const Assignment sub = schedule(cfg, chan);
    const Assignment exh = exhaustive_schedule(cfg, chan, nullptr);
    const double ee_sub = equal_power_system_ee(cfg, chan, sub, true);
    const double ee_exh = equal_power_system_ee(cfg, chan, exh, true);
    REQUIRE(ee_exh >= ee_sub * (1.0 - 1e-12));
  }
}

TEST_CASE("identical inputs give identical assignments") {
  const NetworkConfig cfg = cfg_kmf(4, 8, 2);
  const ChannelRealization chan = sampled_chan(cfg, 77);
  const Assignment a = schedule(cfg, chan);
  const Assignment b = schedule(cfg, chan);
  CHECK(a.cell_of_band == b.cell_of_band);
  CHECK(a.mues_of_band == b.mues_of_band);
  CHECK(a.sic_order == b.sic_order);
}

TEST_CASE("scheduler output always satisfies the assignment invariants") {
  for (int seed = 0; seed < 50; ++seed) {
    NetworkConfig cfg = cfg_kmf(2 + seed % 4, (seed * 3) % 13, 1 + seed % 2);
    cfg.csi_error_var = (seed % 3) * 0.04;
    const ChannelRealization chan = sampled_chan(cfg, 900 + seed);
    const Assignment a = schedule(cfg, chan);
    a.validate(cfg);  // throws on violation
    // every scheduled user appears exactly once in its band's decode order
    for (int b = 0; b < cfg.n_bands(); ++b) {
      const std::size_t expect =
          cfg.sues_per_cell + a.mues_of_band[b].size();
      CHECK(a.sic_order[b].size() == expect);
    }
  }
}
