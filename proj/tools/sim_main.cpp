#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nomahet/campaign.hpp"
#include "nomahet/config.hpp"
#include "nomahet/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw nomahet::ConfigError("cannot read config file '" + path.string() +
                               "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string schemes;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file");
  cmd->add_option("--out", opt.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "master seed (overrides config)");
  cmd->add_option("--trials", opt.trials, "trials per point");
  cmd->add_option("--schemes", opt.schemes,
                  "comma-separated scheme list: noma-eq, noma-ftpa, "
                  "noma-ftpa-bisect, ofdma-eq");
  cmd->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--threads", opt.threads,
                  "worker threads (0 = hardware concurrency)");
}

nomahet::CampaignSpec build_spec(const CommonOptions& opt) {
  nomahet::CampaignSpec spec;
  if (!opt.config_path.empty()) {
    spec = nomahet::campaign_from_json_text(read_file(opt.config_path));
  }
  if (opt.seed) {
    spec.base.seed = *opt.seed;
    spec.master_seed = *opt.seed;
  }
  if (opt.trials) spec.trials = *opt.trials;
  if (!opt.schemes.empty()) {
    spec.schemes.clear();
    std::stringstream ss(opt.schemes);
    std::string name;
    while (std::getline(ss, name, ',')) {
      const auto s = nomahet::scheme_from_name(name);
      if (!s) throw nomahet::ConfigError("unknown scheme '" + name + "'");
      spec.schemes.push_back(*s);
    }
  }
  return spec;
}

nomahet::SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size()) {
    throw nomahet::ConfigError("--sweep expects field=v1,v2,...");
  }
  nomahet::SweepSpec sweep;
  sweep.field = text.substr(0, eq);
  std::stringstream ss(text.substr(eq + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      sweep.values.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw nomahet::ConfigError("bad sweep value '" + tok + "'");
    }
  }
  if (sweep.values.empty()) {
    throw nomahet::ConfigError("--sweep needs at least one value");
  }
  return sweep;
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) {
    throw nomahet::IoError("cannot create output directory '" + dir +
                           "': " + ec.message());
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for two-tier downlink networks with "
               "shared-band (SIC-based) and orthogonal scheduling"};
  app.require_subcommand(1);

  CommonOptions run_opt;
  std::string sweep_text;
  CLI::App* run = app.add_subcommand(
      "run", "run a campaign and write per-(sweep value, scheme) aggregates");
  add_common(run, run_opt);
  run->add_option("--sweep", sweep_text,
                  "parameter sweep, e.g. n_small_cells=2,4,8");

  CommonOptions cdf_opt;
  int grid_points = 20;
  CLI::App* cdf = app.add_subcommand(
      "cdf", "run trials and write the per-user rate CDF per scheme");
  add_common(cdf, cdf_opt);
  cdf->add_option("--grid-points", grid_points, "rate grid size")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      nomahet::CampaignSpec spec = build_spec(run_opt);
      if (!sweep_text.empty()) spec.sweep = parse_sweep(sweep_text);
      const auto rows = nomahet::run_campaign(spec, run_opt.threads);
      const auto dir = prepare_out_dir(run_opt.out_dir);
      const auto path =
          dir / (run_opt.format == "csv" ? "sweep.csv" : "sweep.json");
      if (run_opt.format == "csv") {
        nomahet::write_sweep_csv(rows, path);
      } else {
        nomahet::write_sweep_json(rows, path);
      }
      std::cout << "wrote " << rows.size() << " rows to " << path.string()
                << "\n";
    } else {
      nomahet::CampaignSpec spec = build_spec(cdf_opt);
      spec.sweep.reset();  // sweeps apply to `run` only
      const auto rows =
          nomahet::run_cdf_campaign(spec, grid_points, cdf_opt.threads);
      const auto dir = prepare_out_dir(cdf_opt.out_dir);
      const auto path =
          dir / (cdf_opt.format == "csv" ? "cdf.csv" : "cdf.json");
      if (cdf_opt.format == "csv") {
        nomahet::write_cdf_csv(rows, path);
      } else {
        nomahet::write_cdf_json(rows, path);
      }
      std::cout << "wrote " << rows.size() << " rows to " << path.string()
                << "\n";
    }
  } catch (const nomahet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nomahet::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
