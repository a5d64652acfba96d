#include "nomahet/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "nomahet/errors.hpp"
#include "nomahet/noma.hpp"

namespace nomahet {

namespace {

// Rate and spent transmit power of one band under the scheduling-time
// equal-power split, for an arbitrary candidate MUE set. Self-contained so
// the matching can probe hypothetical configurations cheaply.
struct BandEval {
  double rate_bps = 0.0;
  double tx_power_w = 0.0;
};

BandEval eval_band_equal_power(const NetworkConfig& cfg,
                               const ChannelRealization& chan, int band,
                               int cell, const std::vector<int>& mues,
                               bool use_estimated) {
  const double p_sue = cfg.sbs_band_power_w() / cfg.sues_per_cell;
  const double p_mue =
      mues.empty() ? 0.0 : cfg.mbs_band_budget_w() / mues.size();

  struct Entry {
    int user;
    double power;
    double norm_gain;
  };
  std::vector<Entry> entries;
  entries.reserve(cfg.sues_per_cell + mues.size());
  const double noise = chan.noise_power_w;
  for (int f = 0; f < cfg.sues_per_cell; ++f) {
    const int u = sue_index(cfg, cell, f);
    entries.push_back(
        {u, p_sue, chan.gain(sbs_tx(cell), u, band, use_estimated) / noise});
  }
  for (int m : mues) {
    entries.push_back(
        {m, p_mue, chan.gain(kMbsTx, m, band, use_estimated) / noise});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.norm_gain != b.norm_gain) return a.norm_gain > b.norm_gain;
    return a.user < b.user;
  });

  BandEval out;
  // Interference a user sees comes from the stronger users' transmit powers
  // through that user's own links to the two transmitters on the band.
  double mbs_ahead = 0.0;
  double sbs_ahead = 0.0;
  for (const Entry& e : entries) {
    const double own =
        chan.gain(serving_tx(cfg, e.user), e.user, band, use_estimated);
    const double interference =
        mbs_ahead * chan.gain(kMbsTx, e.user, band, use_estimated) +
        sbs_ahead * chan.gain(sbs_tx(cell), e.user, band, use_estimated);
    const double s = e.power * own / (noise + interference);
    out.rate_bps += cfg.band_width_hz() * std::log2(1.0 + s);
    if (is_mue(cfg, e.user)) {
      mbs_ahead += e.power;
    } else {
      sbs_ahead += e.power;
    }
    out.tx_power_w += e.power;
  }
  return out;
}

}  // namespace

double cell_band_gain(const NetworkConfig& cfg, const ChannelRealization& chan,
                      int cell, int band) {
  double sum = 0.0;
  for (int f = 0; f < cfg.sues_per_cell; ++f) {
    sum += chan.gain_est(sbs_tx(cell), sue_index(cfg, cell, f), band);
  }
  return sum / cfg.sues_per_cell;
}

double band_ee_equal_power(const NetworkConfig& cfg,
                           const ChannelRealization& chan, int band, int cell,
                           const std::vector<int>& mues) {
  const BandEval e = eval_band_equal_power(cfg, chan, band, cell, mues, true);
  return e.rate_bps / (e.tx_power_w + cfg.circuit_power_per_band_w);
}

double equal_power_system_ee(const NetworkConfig& cfg,
                             const ChannelRealization& chan,
                             const Assignment& assign, bool use_estimated) {
  double rate = 0.0;
  double tx = 0.0;
  for (int b = 0; b < cfg.n_bands(); ++b) {
    const BandEval e = eval_band_equal_power(
        cfg, chan, b, assign.cell_of_band[b], assign.mues_of_band[b],
        use_estimated);
    rate += e.rate_bps;
    tx += e.tx_power_w;
  }
  const double circuit = cfg.n_bands() * cfg.circuit_power_per_band_w;
  return rate / (tx + circuit);
}

Assignment schedule_small_cells(const NetworkConfig& cfg,
                                const ChannelRealization& chan) {
  const int k = cfg.n_bands();
  std::vector<double> rep(static_cast<std::size_t>(k) * k);
  for (int c = 0; c < k; ++c) {
    for (int b = 0; b < k; ++b) {
      rep[c * k + b] = cell_band_gain(cfg, chan, c, b);
    }
  }

  Assignment assign;
  assign.cell_of_band.assign(k, -1);
  assign.mues_of_band.assign(k, {});
  assign.sic_order.assign(k, {});

  std::vector<bool> cell_done(k, false), band_done(k, false);
  for (int round = 0; round < k; ++round) {
    int best_c = -1, best_b = -1;
    double best = -1.0;
    for (int c = 0; c < k; ++c) {
      if (cell_done[c]) continue;
      for (int b = 0; b < k; ++b) {
        if (band_done[b]) continue;
        if (rep[c * k + b] > best) {
          best = rep[c * k + b];
          best_c = c;
          best_b = b;
        }
      }
    }
    assign.cell_of_band[best_b] = best_c;
    cell_done[best_c] = true;
    band_done[best_b] = true;
  }
  return assign;
}

Assignment schedule_mues(const NetworkConfig& cfg,
                         const ChannelRealization& chan, Assignment partial,
                         MueScheduleStats* stats) {
  const int k = cfg.n_bands();
  const int m_count = cfg.n_mues;

  // Preference lists: bands by descending estimated serving gain.
  std::vector<std::vector<int>> pref(m_count);
  std::vector<std::vector<int>> rank(m_count);  // band -> position in pref
  for (int m = 0; m < m_count; ++m) {
    pref[m].resize(k);
    std::iota(pref[m].begin(), pref[m].end(), 0);
    std::sort(pref[m].begin(), pref[m].end(), [&](int a, int b) {
      const double ga = chan.gain_est(kMbsTx, m, a);
      const double gb = chan.gain_est(kMbsTx, m, b);
      if (ga != gb) return ga > gb;
      return a < b;
    });
    rank[m].resize(k);
    for (int i = 0; i < k; ++i) rank[m][pref[m][i]] = i;
  }

  std::deque<std::pair<int, int>> pending;  // (mue, next preference index)
  for (int m = 0; m < m_count; ++m) pending.emplace_back(m, 0);

  int proposals = 0;
  while (!pending.empty()) {
    const auto [m, idx] = pending.front();
    pending.pop_front();
    if (idx >= k) continue;  // exhausted every band: zero rate this trial
    const int b = pref[m][idx];
    ++proposals;

    std::vector<int>& occupants = partial.mues_of_band[b];
    if (static_cast<int>(occupants.size()) < cfg.max_mues_per_band) {
      occupants.push_back(m);
      continue;
    }

    // Band full: keep the cap-sized MUE set with the best band EE. The
    // proposer replaces each incumbent in turn; strict improvement required
    // so ties favor the incumbents.
    const int cell = partial.cell_of_band[b];
    double best_ee = band_ee_equal_power(cfg, chan, b, cell, occupants);
    int evict_pos = -1;
    std::vector<int> cand;
    for (std::size_t j = 0; j < occupants.size(); ++j) {
      cand = occupants;
      cand[j] = m;
      const double ee = band_ee_equal_power(cfg, chan, b, cell, cand);
      if (ee > best_ee) {
        best_ee = ee;
        evict_pos = static_cast<int>(j);
      }
    }
    if (evict_pos < 0) {
      pending.emplace_back(m, idx + 1);
    } else {
      const int displaced = occupants[evict_pos];
      occupants[evict_pos] = m;
      pending.emplace_back(displaced, rank[displaced][b] + 1);
    }
  }

  if (stats) stats->proposals = proposals;
  finalize_sic_order(cfg, chan, partial);
  partial.validate(cfg);
  return partial;
}

Assignment schedule(const NetworkConfig& cfg, const ChannelRealization& chan,
                    MueScheduleStats* stats) {
  return schedule_mues(cfg, chan, schedule_small_cells(cfg, chan), stats);
}

Assignment exhaustive_schedule(const NetworkConfig& cfg,
                               const ChannelRealization& chan,
                               std::uint64_t* n_candidates) {
  if (cfg.n_small_cells > 4 || cfg.n_mues > 6 || cfg.sues_per_cell > 2) {
    throw InstanceTooLargeError(
        "exhaustive search guarded to K <= 4, M <= 6, F <= 2");
  }
  const int k = cfg.n_bands();
  const int m_count = cfg.n_mues;

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);

  std::uint64_t count = 0;
  double best_ee = -1.0;
  std::vector<int> best_code;
  Assignment best;

  std::vector<int> choice(m_count, 0);  // 0..k-1 band, k = unscheduled
  std::vector<int> load(k, 0);

  do {
    std::fill(choice.begin(), choice.end(), 0);
    while (true) {
      std::fill(load.begin(), load.end(), 0);
      bool feasible = true;
      for (int m = 0; m < m_count; ++m) {
        if (choice[m] < k && ++load[choice[m]] > cfg.max_mues_per_band) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        ++count;
        Assignment cand;
        cand.cell_of_band = perm;
        cand.mues_of_band.assign(k, {});
        cand.sic_order.assign(k, {});
        for (int m = 0; m < m_count; ++m) {
          if (choice[m] < k) cand.mues_of_band[choice[m]].push_back(m);
        }
        const double ee = equal_power_system_ee(cfg, chan, cand, true);
        std::vector<int> code = perm;
        code.insert(code.end(), choice.begin(), choice.end());
        if (ee > best_ee || (ee == best_ee && code < best_code)) {
          best_ee = ee;
          best_code = std::move(code);
          best = std::move(cand);
        }
      }
      // odometer over the (k+1)-ary MUE choices
      int i = 0;
      while (i < m_count) {
        if (++choice[i] <= k) break;
        choice[i] = 0;
        ++i;
      }
      if (i == m_count) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (n_candidates) *n_candidates = count;
  finalize_sic_order(cfg, chan, best);
  best.validate(cfg);
  return best;
}

void finalize_sic_order(const NetworkConfig& cfg,
                        const ChannelRealization& chan, Assignment& assign) {
  const int k = cfg.n_bands();
  assign.sic_order.assign(k, {});
  for (int b = 0; b < k; ++b) {
    assign.sic_order[b] = sic_order(cfg, b, assign, chan, true);
  }
}

}  // namespace nomahet
