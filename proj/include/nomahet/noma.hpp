#pragma once

#include <vector>

#include "nomahet/assignment.hpp"
#include "nomahet/channel.hpp"
#include "nomahet/config.hpp"

namespace nomahet {

// Users multiplexed on a band: the occupying cell's SUEs plus its MUEs.
std::vector<int> band_users(const NetworkConfig& cfg, const Assignment& assign,
                            int band);

// Decode order on a band: descending effective serving-link gain
// gain(serving_tx, u, band) / noise, ties broken by ascending user id.
std::vector<int> sic_order(const NetworkConfig& cfg, int band,
                           const Assignment& assign,
                           const ChannelRealization& chan, bool use_estimated);

// Post-SIC SINR of a scheduled user. Interference comes from users ranked
// stronger in assign.sic_order (their signals cannot be cancelled); weaker
// users' signals are removed by SIC.
double sinr(const NetworkConfig& cfg, int user, int band,
            const Assignment& assign, const PowerAllocation& power,
            const ChannelRealization& chan, bool use_estimated);

// Shannon rate over the sub-band width.
double user_rate(const NetworkConfig& cfg, int user, int band,
                 const Assignment& assign, const PowerAllocation& power,
                 const ChannelRealization& chan, bool use_estimated);

// Evaluates the whole system for a given assignment and allocation:
// per-user rates, sum rate, spent transmit power, circuit power
// (K * per-band circuit power), energy efficiency and outage flags.
// Realized reports use true gains (use_estimated = false); the scheduler
// evaluates candidate configurations with estimated gains.
TrialReport energy_efficiency(const NetworkConfig& cfg,
                              const Assignment& assign,
                              const PowerAllocation& power,
                              const ChannelRealization& chan,
                              bool use_estimated = false);

}  // namespace nomahet
