#include "nomahet/campaign.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nomahet/channel.hpp"
#include "nomahet/errors.hpp"
#include "nomahet/noma.hpp"
#include "nomahet/ofdma.hpp"
#include "nomahet/power.hpp"
#include "nomahet/rng.hpp"
#include "nomahet/scheduling.hpp"
#include "nomahet/stats.hpp"
#include "nomahet/topology.hpp"

namespace nomahet {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::NomaEq: return "noma-eq";
    case Scheme::NomaFtpa: return "noma-ftpa";
    case Scheme::NomaFtpaBisect: return "noma-ftpa-bisect";
    case Scheme::OfdmaEq: return "ofdma-eq";
  }
  return "?";
}

std::optional<Scheme> scheme_from_name(std::string_view name) {
  for (Scheme s : {Scheme::NomaEq, Scheme::NomaFtpa, Scheme::NomaFtpaBisect,
                   Scheme::OfdmaEq}) {
    if (name == scheme_name(s)) return s;
  }
  return std::nullopt;
}

void CampaignSpec::validate() const {
  base.validate();
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (schemes.empty()) throw ConfigError("scheme list must be non-empty");
  if (sweep) {
    if (sweep->values.empty()) throw ConfigError("sweep value list is empty");
    for (double v : sweep->values) {
      NetworkConfig probe = base;
      apply_config_field(probe, sweep->field, v);  // throws if invalid
    }
  }
}

std::uint64_t trial_seed(std::uint64_t master, int sweep_index, Scheme scheme,
                         int trial_index) {
  return derive_seed(master,
                     {static_cast<std::uint64_t>(sweep_index),
                      static_cast<std::uint64_t>(static_cast<int>(scheme)),
                      static_cast<std::uint64_t>(trial_index)});
}

namespace {

// Distinct sub-streams for each pipeline stage so one stage's draw count
// never shifts another stage's samples.
enum StageTag : std::uint64_t {
  kTopologyStage = 11,
  kChannelStage = 12,
  kCsiStage = 13,
};

TrialReport infeasible_report(const NetworkConfig& cfg) {
  TrialReport r;
  r.rate_bps.assign(cfg.n_users(), 0.0);
  r.scheduled.assign(cfg.n_users(), 0);
  r.outage_flags.assign(cfg.n_users(), 0);
  r.circuit_power_w = cfg.n_bands() * cfg.circuit_power_per_band_w;
  r.infeasible = true;
  return r;
}

// Internal consistency checks the harness applies to every realized report.
void verify_report(const NetworkConfig& cfg, const TrialReport& r) {
  double sum = 0.0;
  for (double v : r.rate_bps) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw std::logic_error("report has a negative or non-finite rate");
    }
    sum += v;
  }
  if (std::fabs(sum - r.sum_rate_bps) >
      1e-9 * std::max(1.0, std::fabs(r.sum_rate_bps))) {
    throw std::logic_error("report sum rate does not match per-user rates");
  }
  const double denom = r.tx_power_w + r.circuit_power_w;
  const double ee = denom > 0.0 ? r.sum_rate_bps / denom : 0.0;
  if (std::fabs(ee - r.ee_bits_per_joule) >
      1e-12 * std::max(1.0, std::fabs(ee))) {
    throw std::logic_error("report energy efficiency identity violated");
  }
  if (std::fabs(r.circuit_power_w -
                cfg.n_bands() * cfg.circuit_power_per_band_w) > 1e-12) {
    throw std::logic_error("report circuit power identity violated");
  }
}

}  // namespace

TrialReport run_trial(const NetworkConfig& cfg, Scheme scheme,
                      std::uint64_t seed) {
  cfg.validate();

  RandomStream topo_rng(derive_seed(seed, {kTopologyStage}));
  RandomStream chan_rng(derive_seed(seed, {kChannelStage}));
  RandomStream csi_rng(derive_seed(seed, {kCsiStage}));

  const Topology topo = generate_topology(cfg, topo_rng);
  ChannelRealization chan = sample_channels(cfg, topo, chan_rng);
  estimate_csi(chan, cfg.csi_error_var, csi_rng);

  TrialReport report;
  if (scheme == Scheme::OfdmaEq) {
    const OfdmaAssignment assign = ofdma_schedule(cfg, chan);
    const PowerAllocation power = ofdma_equal_power(cfg, assign);
    report = ofdma_rates(cfg, assign, power, chan);
  } else {
    const Assignment assign = schedule(cfg, chan);
    if (scheme == Scheme::NomaEq) {
      report = energy_efficiency(cfg, assign, equal_power(cfg, assign), chan);
    } else if (scheme == Scheme::NomaFtpa) {
      report = energy_efficiency(cfg, assign, ftpa(cfg, assign, chan), chan);
    } else {
      try {
        const PowerAllocation tentative = equal_power(cfg, assign);
        const std::vector<double> floors =
            outage_min_power(cfg, assign, chan, tentative);
        const PowerAllocation power =
            ee_power_bisection(cfg, assign, chan, floors);
        report = energy_efficiency(cfg, assign, power, chan);
      } catch (const InfeasibleOutageError&) {
        report = infeasible_report(cfg);
      }
    }
  }
  verify_report(cfg, report);
  return report;
}

std::vector<TrialReport> run_trials(const NetworkConfig& cfg, Scheme scheme,
                                    std::uint64_t master, int sweep_index,
                                    int trials, int n_threads) {
  std::vector<TrialReport> reports(trials);
  if (n_threads <= 0) {
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads <= 0) n_threads = 1;
  }
  n_threads = std::min(n_threads, trials);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        reports[t] =
            run_trial(cfg, scheme, trial_seed(master, sweep_index, scheme, t));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return reports;
}

SweepRow aggregate_reports(const std::vector<TrialReport>& reports,
                           const std::string& scheme,
                           const std::string& sweep_field,
                           double sweep_value) {
  SweepRow row;
  row.scheme = scheme;
  row.sweep_field = sweep_field;
  row.sweep_value = sweep_value;
  row.trials = static_cast<int>(reports.size());

  std::vector<double> ee;
  ee.reserve(reports.size());
  double sum_rate = 0.0, sum_tx = 0.0, sum_outage = 0.0;
  for (const TrialReport& r : reports) {
    if (r.infeasible) {
      ++row.infeasible_trials;
      continue;
    }
    ee.push_back(r.ee_bits_per_joule);
    sum_rate += r.sum_rate_bps;
    sum_tx += r.tx_power_w;
    sum_outage += r.outage_fraction();
  }
  if (!ee.empty()) {
    const double n = static_cast<double>(ee.size());
    row.mean_sum_rate_bps = sum_rate / n;
    row.mean_tx_power_w = sum_tx / n;
    row.mean_ee_bits_per_joule = mean(ee);
    row.stderr_ee = stderr_of_mean(ee);
    row.mean_outage_frac = sum_outage / n;
  }
  return row;
}

std::vector<SweepRow> run_campaign(const CampaignSpec& spec, int n_threads) {
  spec.validate();

  const std::string field = spec.sweep ? spec.sweep->field : "none";
  const std::vector<double> values =
      spec.sweep ? spec.sweep->values : std::vector<double>{0.0};

  std::vector<SweepRow> rows;
  rows.reserve(values.size() * spec.schemes.size());
  for (int vi = 0; vi < static_cast<int>(values.size()); ++vi) {
    NetworkConfig cfg = spec.base;
    if (spec.sweep) apply_config_field(cfg, field, values[vi]);
    for (Scheme scheme : spec.schemes) {
      const auto reports = run_trials(cfg, scheme, spec.master_seed, vi,
                                      spec.trials, n_threads);
      rows.push_back(aggregate_reports(reports, scheme_name(scheme), field,
                                       values[vi]));
    }
  }
  return rows;
}

std::vector<double> empirical_cdf(const std::vector<double>& samples,
                                  const std::vector<double>& grid) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical_cdf: empty sample set");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] < grid[i - 1]) {
      throw std::invalid_argument("empirical_cdf: grid must be ascending");
    }
  }
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> cdf(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), grid[i]);
    cdf[i] = static_cast<double>(it - sorted.begin()) / sorted.size();
  }
  return cdf;
}

std::vector<CdfRow> run_cdf_campaign(const CampaignSpec& spec, int grid_points,
                                     int n_threads) {
  spec.validate();
  if (grid_points < 2) throw ConfigError("grid_points must be >= 2");
  if (spec.sweep) {
    throw ConfigError("rate CDF output does not support a parameter sweep");
  }

  std::vector<std::vector<double>> samples(spec.schemes.size());
  double max_rate = 0.0;
  for (int ci = 0; ci < static_cast<int>(spec.schemes.size()); ++ci) {
    const auto reports = run_trials(spec.base, spec.schemes[ci],
                                    spec.master_seed, 0, spec.trials,
                                    n_threads);
    for (const TrialReport& r : reports) {
      if (r.infeasible) continue;
      for (double v : r.rate_bps) {
        samples[ci].push_back(v);
        max_rate = std::max(max_rate, v);
      }
    }
  }

  std::vector<double> grid(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    grid[i] = max_rate * static_cast<double>(i) / (grid_points - 1);
  }

  std::vector<CdfRow> rows;
  rows.reserve(spec.schemes.size() * grid.size());
  for (int ci = 0; ci < static_cast<int>(spec.schemes.size()); ++ci) {
    const auto cdf = empirical_cdf(samples[ci], grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      rows.push_back({scheme_name(spec.schemes[ci]), grid[i], cdf[i]});
    }
  }
  return rows;
}

namespace {

// Shortest decimal that round-trips the exact double.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps \n on all hosts
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "scheme,sweep_field,sweep_value,trials,infeasible_trials,"
         "mean_sum_rate_bps,mean_tx_power_w,mean_ee_bits_per_joule,"
         "stderr_ee,mean_outage_frac\n";
  for (const SweepRow& r : rows) {
    out << r.scheme << ',' << r.sweep_field << ','
        << format_double(r.sweep_value) << ',' << r.trials << ','
        << r.infeasible_trials << ',' << format_double(r.mean_sum_rate_bps)
        << ',' << format_double(r.mean_tx_power_w) << ','
        << format_double(r.mean_ee_bits_per_joule) << ','
        << format_double(r.stderr_ee) << ','
        << format_double(r.mean_outage_frac) << '\n';
  }
  finish_output(out, path);
}

void write_sweep_json(const std::vector<SweepRow>& rows,
                      const std::filesystem::path& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepRow& r : rows) {
    arr.push_back({{"scheme", r.scheme},
                   {"sweep_field", r.sweep_field},
                   {"sweep_value", r.sweep_value},
                   {"trials", r.trials},
                   {"infeasible_trials", r.infeasible_trials},
                   {"mean_sum_rate_bps", r.mean_sum_rate_bps},
                   {"mean_tx_power_w", r.mean_tx_power_w},
                   {"mean_ee_bits_per_joule", r.mean_ee_bits_per_joule},
                   {"stderr_ee", r.stderr_ee},
                   {"mean_outage_frac", r.mean_outage_frac}});
  }
  auto out = open_output(path);
  out << arr.dump(2) << '\n';
  finish_output(out, path);
}

void write_cdf_csv(const std::vector<CdfRow>& rows,
                   const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "scheme,rate_bps,cdf\n";
  for (const CdfRow& r : rows) {
    out << r.scheme << ',' << format_double(r.rate_bps) << ','
        << format_double(r.cdf) << '\n';
  }
  finish_output(out, path);
}

void write_cdf_json(const std::vector<CdfRow>& rows,
                    const std::filesystem::path& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CdfRow& r : rows) {
    arr.push_back({{"scheme", r.scheme},
                   {"rate_bps", r.rate_bps},
                   {"cdf", r.cdf}});
  }
  auto out = open_output(path);
  out << arr.dump(2) << '\n';
  finish_output(out, path);
}

CampaignSpec campaign_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  CampaignSpec spec;
  spec.base = config_from_json_text(text);
  spec.master_seed = spec.base.seed;

  if (j.contains("trials")) {
    if (!j["trials"].is_number_integer()) {
      throw ConfigError("'trials' must be an integer");
    }
    spec.trials = j["trials"].get<int>();
  }
  if (j.contains("schemes")) {
    if (!j["schemes"].is_array()) {
      throw ConfigError("'schemes' must be an array of names");
    }
    spec.schemes.clear();
    for (const auto& v : j["schemes"]) {
      const auto s = scheme_from_name(v.get<std::string>());
      if (!s) {
        throw ConfigError("unknown scheme '" + v.get<std::string>() + "'");
      }
      spec.schemes.push_back(*s);
    }
  }
  if (j.contains("sweep")) {
    const auto& sw = j["sweep"];
    if (!sw.is_object() || !sw.contains("field") || !sw.contains("values")) {
      throw ConfigError("'sweep' must be {field, values}");
    }
    SweepSpec sweep;
    sweep.field = sw["field"].get<std::string>();
    for (const auto& v : sw["values"]) {
      sweep.values.push_back(v.get<double>());
    }
    spec.sweep = std::move(sweep);
  }
  spec.validate();
  return spec;
}

}  // namespace nomahet
