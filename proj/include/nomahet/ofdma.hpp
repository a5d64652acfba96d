#pragma once

#include <vector>

#include "nomahet/assignment.hpp"
#include "nomahet/channel.hpp"
#include "nomahet/config.hpp"

namespace nomahet {

// Orthogonal baseline: every sub-band is owned by exactly one small cell or
// one MUE, so no link ever sees interference.
enum class OwnerKind { None, SmallCell, Mue };

struct OfdmaAssignment {
  std::vector<OwnerKind> kind;  // per band
  std::vector<int> owner;       // cell index or MUE user id, -1 when none

  void validate(const NetworkConfig& cfg) const;
};

// Greedy exclusive assignment: repeatedly picks the globally highest
// (owner, band) estimated gain among unassigned owners and bands. A cell's
// gain on a band is its representative (mean SUE) gain; an MUE's is its
// serving-link gain. Users without a band get zero rate.
OfdmaAssignment ofdma_schedule(const NetworkConfig& cfg,
                               const ChannelRealization& chan);

// A cell owner splits its per-band budget evenly across its SUEs; an MUE
// owner receives the full macro per-band budget.
PowerAllocation ofdma_equal_power(const NetworkConfig& cfg,
                                  const OfdmaAssignment& assign);

// Interference-free rates: an owning cell splits its band into F orthogonal
// slices (per-slice noise scales down with the slice width); an owning MUE
// uses the whole band. Circuit power accounting matches the NOMA schemes.
TrialReport ofdma_rates(const NetworkConfig& cfg,
                        const OfdmaAssignment& assign,
                        const PowerAllocation& power,
                        const ChannelRealization& chan);

}  // namespace nomahet
