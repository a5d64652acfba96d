#pragma once

#include <cstdint>
#include <vector>

#include "nomahet/assignment.hpp"
#include "nomahet/channel.hpp"
#include "nomahet/config.hpp"

namespace nomahet {

// Representative gain of a cell on a band: mean estimated serving gain of
// its SUEs there. This is the key both matchings rank candidates by.
double cell_band_gain(const NetworkConfig& cfg, const ChannelRealization& chan,
                      int cell, int band);

// Energy efficiency of one band under the equal-power split used during
// scheduling: the cell's SUEs at P_s/(2KF) each, the candidate MUE set
// splitting the macro per-band budget evenly. Estimated gains.
double band_ee_equal_power(const NetworkConfig& cfg,
                           const ChannelRealization& chan, int band, int cell,
                           const std::vector<int>& mues);

// System energy efficiency of a full assignment under the same equal-power
// split; the objective the exhaustive search maximizes.
double equal_power_system_ee(const NetworkConfig& cfg,
                             const ChannelRealization& chan,
                             const Assignment& assign, bool use_estimated);

// Stage 1: greedy cell<->band matching. Repeatedly takes the globally
// highest representative gain among unmatched (cell, band) pairs; ties break
// on (cell, band) index. MUE lists are left empty.
Assignment schedule_small_cells(const NetworkConfig& cfg,
                                const ChannelRealization& chan);

struct MueScheduleStats {
  int proposals = 0;
};

// Stage 2: deferred-acceptance MUE matching. Each unscheduled MUE proposes
// down its preference list (bands by descending estimated serving gain); a
// full band keeps the configuration of cap-many MUEs with the highest band
// energy efficiency and the displaced MUE proposes to its next choice.
// Every MUE proposes to each band at most once, so the process terminates
// within M*K proposals; MUEs that exhaust their list stay unscheduled.
// Fills in the per-band SIC order before returning.
Assignment schedule_mues(const NetworkConfig& cfg,
                         const ChannelRealization& chan, Assignment partial,
                         MueScheduleStats* stats = nullptr);

// Both stages back to back.
Assignment schedule(const NetworkConfig& cfg, const ChannelRealization& chan,
                    MueScheduleStats* stats = nullptr);

// Exhaustive oracle for small instances: enumerates every cell<->band
// bijection times every cap-respecting MUE->band-or-unscheduled map and
// returns the assignment with the best equal-power system energy efficiency
// (estimated gains), ties broken by lexicographic encoding. Guarded to
// K <= 4, M <= 6, F <= 2; throws InstanceTooLargeError beyond that.
// n_candidates, when given, receives the number of feasible candidates
// enumerated.
Assignment exhaustive_schedule(const NetworkConfig& cfg,
                               const ChannelRealization& chan,
                               std::uint64_t* n_candidates = nullptr);

// Recomputes the SIC order of every band from estimated gains.
void finalize_sic_order(const NetworkConfig& cfg,
                        const ChannelRealization& chan, Assignment& assign);

}  // namespace nomahet
