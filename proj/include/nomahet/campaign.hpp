#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nomahet/assignment.hpp"
#include "nomahet/config.hpp"

namespace nomahet {

enum class Scheme : int {
  NomaEq = 0,
  NomaFtpa = 1,
  NomaFtpaBisect = 2,
  OfdmaEq = 3,
};

const char* scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(std::string_view name);

struct SweepSpec {
  std::string field;
  std::vector<double> values;
};

struct CampaignSpec {
  NetworkConfig base;
  std::optional<SweepSpec> sweep;
  std::vector<Scheme> schemes{Scheme::NomaEq, Scheme::OfdmaEq};
  int trials = 500;
  std::uint64_t master_seed = 1;

  void validate() const;
};

// Per-trial seed: counter-derived from (master, sweep index, canonical
// scheme index, trial index). Independent of execution order and thread
// count, and a scheme's trials do not depend on which other schemes run.
std::uint64_t trial_seed(std::uint64_t master, int sweep_index, Scheme scheme,
                         int trial_index);

// One full pipeline pass: topology -> channels -> CSI estimate -> schedule
// -> power policy -> realized report on true gains. Outage-infeasible trials
// come back flagged with zero rates instead of aborting.
TrialReport run_trial(const NetworkConfig& cfg, Scheme scheme,
                      std::uint64_t seed);

// `trials` independent trials with seeds from trial_seed(...). Runs on
// n_threads workers (0 = hardware concurrency); results are indexed by
// trial, so the output is identical for any thread count.
std::vector<TrialReport> run_trials(const NetworkConfig& cfg, Scheme scheme,
                                    std::uint64_t master, int sweep_index,
                                    int trials, int n_threads = 0);

// Aggregated row for one (sweep value, scheme) cell. Means are taken over
// feasible trials only.
struct SweepRow {
  std::string scheme;
  std::string sweep_field;
  double sweep_value = 0.0;
  int trials = 0;
  int infeasible_trials = 0;
  double mean_sum_rate_bps = 0.0;
  double mean_tx_power_w = 0.0;
  double mean_ee_bits_per_joule = 0.0;
  double stderr_ee = 0.0;
  double mean_outage_frac = 0.0;
};

SweepRow aggregate_reports(const std::vector<TrialReport>& reports,
                           const std::string& scheme,
                           const std::string& sweep_field, double sweep_value);

// Rows in sweep-major order: for each sweep value, one row per scheme.
std::vector<SweepRow> run_campaign(const CampaignSpec& spec,
                                   int n_threads = 0);

// Empirical CDF F(x) = fraction of samples <= x at each grid point; the
// grid must be ascending and the samples non-empty.
std::vector<double> empirical_cdf(const std::vector<double>& samples,
                                  const std::vector<double>& grid);

struct CdfRow {
  std::string scheme;
  double rate_bps = 0.0;
  double cdf = 0.0;
};

// Per-user rate CDF per scheme on a shared grid spanning [0, max observed
// rate]. Samples include zero-rate (unscheduled) users of feasible trials.
std::vector<CdfRow> run_cdf_campaign(const CampaignSpec& spec,
                                     int grid_points, int n_threads = 0);

// Writers. Numeric formatting uses shortest round-trip decimals; files are
// UTF-8 with Unix newlines. I/O failures throw IoError with path context.
void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::filesystem::path& path);
void write_sweep_json(const std::vector<SweepRow>& rows,
                      const std::filesystem::path& path);
void write_cdf_csv(const std::vector<CdfRow>& rows,
                   const std::filesystem::path& path);
void write_cdf_json(const std::vector<CdfRow>& rows,
                    const std::filesystem::path& path);

// Parses a campaign document (NetworkConfig fields plus trials / schemes /
// sweep / seed). Throws ConfigError on malformed input.
CampaignSpec campaign_from_json_text(const std::string& text);

}  // namespace nomahet
