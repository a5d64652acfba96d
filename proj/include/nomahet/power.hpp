#pragma once

#include <vector>

#include "nomahet/assignment.hpp"
#include "nomahet/channel.hpp"
#include "nomahet/config.hpp"

namespace nomahet {

// Equal split of each transmitter's per-band budget: the macro budget
// P_s/(2K) across the band's MUEs, the cell budget P_s/(2K) across its SUEs.
PowerAllocation equal_power(const NetworkConfig& cfg,
                            const Assignment& assign);

// Fractional transmit power allocation: within a transmitter's user set on
// a band, p_u = budget * g_u^(-alpha) / sum_v g_v^(-alpha) with g the
// estimated serving gain over noise. alpha = 0 collapses to the equal split;
// larger alpha shifts power toward weaker users.
PowerAllocation ftpa(const NetworkConfig& cfg, const Assignment& assign,
                     const ChannelRealization& chan);

// Transforms the per-user outage constraint Pr(rate < rate_min | estimate)
// <= eps into a minimum power per scheduled user. The conditional true
// fading power given the estimate is modeled as (var/2) * ncx2(2 dof,
// lambda = |f_est|^2 / (var/2)); the eps-quantile of the resulting gain and
// the post-SIC interference under the tentative allocation give
// p_min = (2^(rate_min/band_width) - 1) * (noise + interference) / quantile.
// Throws InfeasibleOutageError when the floors exceed a per-band budget.
std::vector<double> outage_min_power(const NetworkConfig& cfg,
                                     const Assignment& assign,
                                     const ChannelRealization& chan,
                                     const PowerAllocation& tentative);

// Energy-efficiency maximization over a single total-power scale theta in
// [theta_min, 1]: powers = theta * full-budget FTPA allocation, theta_min
// the smallest scale meeting all floors. Bisects on the sign of the central
// finite-difference derivative of EE(theta) until the interval is below
// 1e-6, evaluating with estimated gains. Propagates InfeasibleOutageError
// when theta_min > 1.
PowerAllocation ee_power_bisection(const NetworkConfig& cfg,
                                   const Assignment& assign,
                                   const ChannelRealization& chan,
                                   const std::vector<double>& p_min,
                                   double* theta_star = nullptr);

// EE(theta) as seen by the bisection (estimated gains, frozen FTPA
// fractions). Exposed for the optimality checks.
double ee_at_scale(const NetworkConfig& cfg, const Assignment& assign,
                   const ChannelRealization& chan,
                   const PowerAllocation& full_budget, double theta);

}  // namespace nomahet
