#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "nomahet/campaign.hpp"
#include "nomahet/errors.hpp"
#include "nomahet/stats.hpp"

using namespace nomahet;

namespace {

NetworkConfig cfg_kmf(int k, int m, int f) {
  NetworkConfig cfg;
  cfg.n_small_cells = k;
  cfg.n_mues = m;
  cfg.sues_per_cell = f;
  return cfg;
}

bool reports_identical(const TrialReport& a, const TrialReport& b) {
  return a.rate_bps == b.rate_bps && a.scheduled == b.scheduled &&
         a.outage_flags == b.outage_flags &&
         a.sum_rate_bps == b.sum_rate_bps && a.tx_power_w == b.tx_power_w &&
         a.circuit_power_w == b.circuit_power_w &&
         a.ee_bits_per_joule == b.ee_bits_per_joule &&
         a.infeasible == b.infeasible;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("identical trial inputs give bit-identical reports") {
  const NetworkConfig cfg = cfg_kmf(4, 8, 2);
  for (Scheme s : {Scheme::NomaEq, Scheme::NomaFtpa, Scheme::NomaFtpaBisect,
                   Scheme::OfdmaEq}) {
    const TrialReport a = run_trial(cfg, s, 12345);
    const TrialReport b = run_trial(cfg, s, 12345);
    REQUIRE(reports_identical(a, b));
  }
}

TEST_CASE("power policy changes powers, never the assignment") {
  const NetworkConfig cfg = cfg_kmf(4, 8, 2);
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const TrialReport eq = run_trial(cfg, Scheme::NomaEq, seed);
    const TrialReport ft = run_trial(cfg, Scheme::NomaFtpa, seed);
    REQUIRE(eq.scheduled == ft.scheduled);  // same users on air
    CHECK(eq.tx_power_w == doctest::Approx(ft.tx_power_w).epsilon(1e-12));
    CHECK(eq.rate_bps != ft.rate_bps);  // powers differ within the budgets
  }
}

TEST_CASE("disjoint Monte Carlo batches agree to two percent") {
  const NetworkConfig cfg = cfg_kmf(4, 8, 2);
  auto mean_ee = [&](int first_trial) {
    double sum = 0.0;
    for (int t = 0; t < 500; ++t) {
      const auto r = run_trial(cfg, Scheme::NomaEq,
                               trial_seed(99, 0, Scheme::NomaEq,
                                          first_trial + t));
      sum += r.ee_bits_per_joule;
    }
    return sum / 500;
  };
  const double a = mean_ee(0);
  const double b = mean_ee(500);
  CHECK(a == doctest::Approx(b).epsilon(0.02));
}

TEST_CASE("a one-point campaign reduces to a single trial") {
  CampaignSpec spec;
  spec.base = cfg_kmf(3, 4, 1);
  spec.schemes = {Scheme::NomaEq};
  spec.trials = 1;
  spec.master_seed = 7;
  const auto rows = run_campaign(spec);
  REQUIRE(rows.size() == 1);

  const TrialReport r =
      run_trial(spec.base, Scheme::NomaEq, trial_seed(7, 0, Scheme::NomaEq, 0));
  CHECK(rows[0].trials == 1);
  CHECK(rows[0].mean_ee_bits_per_joule ==
        doctest::Approx(r.ee_bits_per_joule).epsilon(1e-12));
  CHECK(rows[0].mean_sum_rate_bps ==
        doctest::Approx(r.sum_rate_bps).epsilon(1e-12));
  CHECK(rows[0].stderr_ee == 0.0);
}

TEST_CASE("aggregates are independent of the thread count") {
  CampaignSpec spec;
  spec.base = cfg_kmf(3, 6, 2);
  spec.base.csi_error_var = 0.05;
  spec.schemes = {Scheme::NomaEq, Scheme::NomaFtpaBisect};
  spec.sweep = SweepSpec{"csi_error_var", {0.0, 0.05}};
  spec.trials = 40;
  spec.master_seed = 11;

  const auto serial = run_campaign(spec, 1);
  const auto threaded = run_campaign(spec, 4);
  REQUIRE(serial.size() == threaded.size());

  const auto dir = std::filesystem::temp_directory_path() / "nomahet_test";
  std::filesystem::create_directories(dir);
  write_sweep_csv(serial, dir / "serial.csv");
  write_sweep_csv(threaded, dir / "threaded.csv");
  CHECK(slurp(dir / "serial.csv") == slurp(dir / "threaded.csv"));
}

TEST_CASE("rows come out in sweep-major order") {
  CampaignSpec spec;
  spec.base = cfg_kmf(2, 2, 1);
  spec.schemes = {Scheme::NomaEq, Scheme::OfdmaEq};
  spec.sweep = SweepSpec{"n_small_cells", {2, 3}};
  spec.trials = 2;
  const auto rows = run_campaign(spec);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].sweep_value == 2);
  CHECK(rows[0].scheme == "noma-eq");
  CHECK(rows[1].sweep_value == 2);
  CHECK(rows[1].scheme == "ofdma-eq");
  CHECK(rows[2].sweep_value == 3);
  CHECK(rows[2].scheme == "noma-eq");
  CHECK(rows[3].sweep_value == 3);
  CHECK(rows[3].scheme == "ofdma-eq");
}

TEST_CASE("empirical cdf basics and reference implementation") {
  SUBCASE("constant samples step at the constant") {
    const std::vector<double> s(10, 3.0);
    const auto cdf = empirical_cdf(s, {1.0, 2.9, 3.0, 4.0});
    CHECK(cdf == std::vector<double>{0.0, 0.0, 1.0, 1.0});
  }
  SUBCASE("monotone and one at the max sample") {
    RandomStream rng(5);
    std::vector<double> s;
    for (int i = 0; i < 500; ++i) s.push_back(rng.normal());
    std::vector<double> grid;
    for (int i = 0; i < 50; ++i) grid.push_back(-3.0 + i * 0.125);
    grid.push_back(*std::max_element(s.begin(), s.end()));
    std::sort(grid.begin(), grid.end());
    const auto cdf = empirical_cdf(s, grid);
    for (std::size_t i = 1; i < cdf.size(); ++i) REQUIRE(cdf[i] >= cdf[i - 1]);
    CHECK(cdf.back() == 1.0);

    // sort-and-count reference, computed the slow way
    for (std::size_t i = 0; i < grid.size(); ++i) {
      int n = 0;
      for (double v : s) n += v <= grid[i] ? 1 : 0;
      REQUIRE(cdf[i] == n / 500.0);
    }
  }
  SUBCASE("empty samples are rejected") {
    CHECK_THROWS_AS(empirical_cdf({}, {1.0}), std::invalid_argument);
  }
}

TEST_CASE("csv and json writers") {
  const auto dir = std::filesystem::temp_directory_path() / "nomahet_test";
  std::filesystem::create_directories(dir);

  SUBCASE("empty result set gives a header-only csv") {
    write_sweep_csv({}, dir / "empty.csv");
    CHECK(slurp(dir / "empty.csv") ==
          "scheme,sweep_field,sweep_value,trials,infeasible_trials,"
          "mean_sum_rate_bps,mean_tx_power_w,mean_ee_bits_per_joule,"
          "stderr_ee,mean_outage_frac\n");
  }
  SUBCASE("csv numbers round-trip exactly") {
    SweepRow row;
    row.scheme = "noma-eq";
    row.sweep_field = "csi_error_var";
    row.sweep_value = 0.1;  // not exactly representable; stress the writer
    row.trials = 500;
    row.infeasible_trials = 3;
    row.mean_sum_rate_bps = 363524378.123456789;
    row.mean_tx_power_w = 19.999999999999996;
    row.mean_ee_bits_per_joule = 1.8000000000000001e7;
    row.stderr_ee = 1.25e-3;
    row.mean_outage_frac = 1.0 / 3.0;
    write_sweep_csv({row}, dir / "row.csv");

    std::ifstream in(dir / "row.csv");
    std::string header, line;
    std::getline(in, header);
    std::getline(in, line);
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) fields.push_back(tok);
    REQUIRE(fields.size() == 10);
    CHECK(std::strtod(fields[2].c_str(), nullptr) == row.sweep_value);
    CHECK(std::strtod(fields[5].c_str(), nullptr) == row.mean_sum_rate_bps);
    CHECK(std::strtod(fields[6].c_str(), nullptr) == row.mean_tx_power_w);
    CHECK(std::strtod(fields[7].c_str(), nullptr) ==
          row.mean_ee_bits_per_joule);
    CHECK(std::strtod(fields[8].c_str(), nullptr) == row.stderr_ee);
    CHECK(std::strtod(fields[9].c_str(), nullptr) == row.mean_outage_frac);
  }
  SUBCASE("unwritable paths surface as io errors") {
    CHECK_THROWS_AS(write_sweep_csv({}, "/nonexistent-dir/x/y.csv"), IoError);
  }
}

TEST_CASE("cdf campaign emits one block per scheme on a shared grid") {
  CampaignSpec spec;
  spec.base = cfg_kmf(2, 4, 1);
  spec.schemes = {Scheme::NomaEq, Scheme::OfdmaEq};
  spec.trials = 20;
  spec.master_seed = 3;
  const auto rows = run_cdf_campaign(spec, 10);
  REQUIRE(rows.size() == 20);
  for (int i = 0; i < 10; ++i) {
    CHECK(rows[i].scheme == "noma-eq");
    CHECK(rows[10 + i].scheme == "ofdma-eq");
    CHECK(rows[i].rate_bps == rows[10 + i].rate_bps);  // shared grid
  }
  CHECK(rows[9].cdf == 1.0);  // grid ends at the max observed rate
}

TEST_CASE("config documents parse with defaults and reject junk") {
  SUBCASE("empty object keeps defaults") {
    const NetworkConfig cfg = config_from_json_text("{}");
    CHECK(cfg.n_small_cells == 4);
    CHECK(cfg.max_mues_per_band == 2);
  }
  SUBCASE("fields override") {
    const NetworkConfig cfg = config_from_json_text(
        R"({"n_small_cells": 7, "n_mues": 14, "csi_error_var": 0.05,
            "pathloss_macro": {"intercept_db": 120.0}})");
    CHECK(cfg.n_small_cells == 7);
    CHECK(cfg.n_mues == 14);
    CHECK(cfg.csi_error_var == 0.05);
    CHECK(cfg.pathloss_macro.intercept_db == 120.0);
    CHECK(cfg.pathloss_macro.exponent_db_decade == 37.6);  // untouched
  }
  SUBCASE("invalid values are rejected") {
    CHECK_THROWS_AS(config_from_json_text(R"({"n_small_cells": 0})"),
                    ConfigError);
    CHECK_THROWS_AS(config_from_json_text(R"({"outage_eps": 1.5})"),
                    ConfigError);
    CHECK_THROWS_AS(config_from_json_text(R"({"csi_error_var": -0.1})"),
                    ConfigError);
    CHECK_THROWS_AS(config_from_json_text("not json"), ConfigError);
    CHECK_THROWS_AS(config_from_json_text(R"({"no_such_field": 1})"),
                    ConfigError);
  }
  SUBCASE("campaign document with schemes and sweep") {
    const CampaignSpec spec = campaign_from_json_text(
        R"({"n_small_cells": 2, "n_mues": 4, "trials": 9, "seed": 44,
            "schemes": ["noma-ftpa-bisect", "ofdma-eq"],
            "sweep": {"field": "csi_error_var", "values": [0.0, 0.05]}})");
    CHECK(spec.trials == 9);
    CHECK(spec.master_seed == 44);
    REQUIRE(spec.schemes.size() == 2);
    CHECK(spec.schemes[0] == Scheme::NomaFtpaBisect);
    REQUIRE(spec.sweep.has_value());
    CHECK(spec.sweep->field == "csi_error_var");
    CHECK_THROWS_AS(
        campaign_from_json_text(R"({"schemes": ["nope"]})"), ConfigError);
    CHECK_THROWS_AS(campaign_from_json_text(
                        R"({"sweep": {"field": "bogus", "values": [1]}})"),
                    ConfigError);
  }
}

TEST_CASE("trial seeds differ across sweep, scheme and trial indices") {
  const auto s = trial_seed(1, 0, Scheme::NomaEq, 0);
  CHECK(trial_seed(1, 0, Scheme::NomaEq, 1) != s);
  CHECK(trial_seed(1, 1, Scheme::NomaEq, 0) != s);
  CHECK(trial_seed(1, 0, Scheme::OfdmaEq, 0) != s);
  CHECK(trial_seed(2, 0, Scheme::NomaEq, 0) != s);
}
