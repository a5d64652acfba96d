#include "nomahet/assignment.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace nomahet {

namespace {

[[noreturn]] void contract_violation(const std::string& what) {
  throw std::logic_error("internal contract violated: " + what);
}

}  // namespace

void Assignment::validate(const NetworkConfig& cfg) const {
  const int k = cfg.n_bands();
  if (static_cast<int>(cell_of_band.size()) != k ||
      static_cast<int>(mues_of_band.size()) != k) {
    contract_violation("assignment has wrong band count");
  }
  std::vector<int> cell_seen(k, 0);
  for (int b = 0; b < k; ++b) {
    const int c = cell_of_band[b];
    if (c < 0 || c >= k) contract_violation("cell index out of range");
    if (cell_seen[c]++) contract_violation("cell occupies two bands");
  }
  std::vector<int> mue_seen(cfg.n_mues, 0);
  for (int b = 0; b < k; ++b) {
    if (static_cast<int>(mues_of_band[b].size()) > cfg.max_mues_per_band) {
      contract_violation("per-band MUE cap exceeded");
    }
    for (int m : mues_of_band[b]) {
      if (m < 0 || m >= cfg.n_mues) contract_violation("not an MUE id");
      if (mue_seen[m]++) contract_violation("MUE scheduled twice");
    }
  }
}

void PowerAllocation::validate(const NetworkConfig& cfg,
                               const Assignment& assign) const {
  const double tol = 1e-9;  // relative slack on budget sums
  const double mbs_budget = cfg.mbs_band_budget_w();
  const double sbs_budget = cfg.sbs_band_power_w();

  for (double v : p) {
    if (v < 0.0 || !std::isfinite(v)) {
      contract_violation("negative or non-finite power entry");
    }
  }

  double mbs_total = 0.0;
  double sbs_total = 0.0;
  for (int b = 0; b < cfg.n_bands(); ++b) {
    double mbs_band = 0.0;
    for (int m : assign.mues_of_band[b]) mbs_band += at(m, b);
    if (mbs_band > mbs_budget * (1.0 + tol)) {
      contract_violation("macro per-band budget exceeded");
    }
    mbs_total += mbs_band;

    const int cell = assign.cell_of_band[b];
    double sbs_band = 0.0;
    for (int f = 0; f < cfg.sues_per_cell; ++f) {
      sbs_band += at(sue_index(cfg, cell, f), b);
    }
    if (sbs_band > sbs_budget * (1.0 + tol)) {
      contract_violation("small-cell per-band budget exceeded");
    }
    sbs_total += sbs_band;
  }
  const double tier_budget = cfg.total_power_w / 2.0;
  if (mbs_total > tier_budget * (1.0 + tol) ||
      sbs_total > tier_budget * (1.0 + tol)) {
    contract_violation("tier power budget exceeded");
  }
}

}  // namespace nomahet
