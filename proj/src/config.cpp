#include "nomahet/config.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <set>
#include <sstream>

namespace nomahet {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

void NetworkConfig::validate() const {
  require(n_small_cells >= 1, "n_small_cells must be >= 1");
  require(n_mues >= 0, "n_mues must be >= 0");
  require(sues_per_cell >= 1, "sues_per_cell must be >= 1");
  require(bandwidth_hz > 0.0, "bandwidth_hz must be > 0");
  require(total_power_w > 0.0, "total_power_w must be > 0");
  require(circuit_power_per_band_w >= 0.0,
          "circuit_power_per_band_w must be >= 0");
  require(macro_radius_m > 0.0, "macro_radius_m must be > 0");
  require(small_radius_m > 0.0, "small_radius_m must be > 0");
  require(wall_loss_db >= 0.0, "wall_loss_db must be >= 0");
  require(csi_error_var >= 0.0 && csi_error_var < 1.0,
          "csi_error_var must be in [0, 1)");
  require(max_mues_per_band >= 1, "max_mues_per_band must be >= 1");
  require(ftpa_alpha >= 0.0 && ftpa_alpha <= 1.0,
          "ftpa_alpha must be in [0, 1]");
  require(rate_min_bps >= 0.0, "rate_min_bps must be >= 0");
  require(outage_eps > 0.0 && outage_eps < 1.0,
          "outage_eps must be in (0, 1)");
  require(std::isfinite(noise_psd_dbm_hz), "noise_psd_dbm_hz must be finite");
}

namespace {

double get_number(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) {
    throw ConfigError(std::string("config field '") + key +
                      "' must be a number");
  }
  return v.get<double>();
}

int get_int(const nlohmann::json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("config field '") + key +
                      "' must be an integer");
  }
  return v.get<int>();
}

PathLossModel get_pathloss(const nlohmann::json& j, const char* key,
                           PathLossModel fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_object()) {
    throw ConfigError(std::string("config field '") + key +
                      "' must be an object");
  }
  PathLossModel m = fallback;
  m.intercept_db = get_number(v, "intercept_db", m.intercept_db);
  m.exponent_db_decade =
      get_number(v, "exponent_db_decade", m.exponent_db_decade);
  return m;
}

const std::set<std::string> kKnownKeys = {
    "n_small_cells", "n_mues", "sues_per_cell", "bandwidth_hz",
    "total_power_w", "circuit_power_per_band_w", "macro_radius_m",
    "small_radius_m", "pathloss_macro", "pathloss_small", "wall_loss_db",
    "noise_psd_dbm_hz", "csi_error_var", "max_mues_per_band", "ftpa_alpha",
    "rate_min_bps", "outage_eps", "seed",
    // campaign-level keys, accepted here so one document can carry both
    "trials", "schemes", "sweep", "format"};

}  // namespace

NetworkConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config document must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!kKnownKeys.count(key)) {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }
  NetworkConfig cfg;
  cfg.n_small_cells = get_int(j, "n_small_cells", cfg.n_small_cells);
  cfg.n_mues = get_int(j, "n_mues", cfg.n_mues);
  cfg.sues_per_cell = get_int(j, "sues_per_cell", cfg.sues_per_cell);
  cfg.bandwidth_hz = get_number(j, "bandwidth_hz", cfg.bandwidth_hz);
  cfg.total_power_w = get_number(j, "total_power_w", cfg.total_power_w);
  cfg.circuit_power_per_band_w =
      get_number(j, "circuit_power_per_band_w", cfg.circuit_power_per_band_w);
  cfg.macro_radius_m = get_number(j, "macro_radius_m", cfg.macro_radius_m);
  cfg.small_radius_m = get_number(j, "small_radius_m", cfg.small_radius_m);
  cfg.pathloss_macro = get_pathloss(j, "pathloss_macro", cfg.pathloss_macro);
  cfg.pathloss_small = get_pathloss(j, "pathloss_small", cfg.pathloss_small);
  cfg.wall_loss_db = get_number(j, "wall_loss_db", cfg.wall_loss_db);
  cfg.noise_psd_dbm_hz =
      get_number(j, "noise_psd_dbm_hz", cfg.noise_psd_dbm_hz);
  cfg.csi_error_var = get_number(j, "csi_error_var", cfg.csi_error_var);
  cfg.max_mues_per_band =
      get_int(j, "max_mues_per_band", cfg.max_mues_per_band);
  cfg.ftpa_alpha = get_number(j, "ftpa_alpha", cfg.ftpa_alpha);
  cfg.rate_min_bps = get_number(j, "rate_min_bps", cfg.rate_min_bps);
  cfg.outage_eps = get_number(j, "outage_eps", cfg.outage_eps);
  if (j.contains("seed")) {
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  cfg.validate();
  return cfg;
}

NetworkConfig config_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return config_from_json(j);
}

void apply_config_field(NetworkConfig& cfg, const std::string& field,
                        double value) {
  auto as_int = [&](const std::string& name) {
    const int i = static_cast<int>(std::llround(value));
    if (std::abs(value - i) > 1e-9) {
      throw ConfigError("sweep value for '" + name + "' must be an integer");
    }
    return i;
  };
  if (field == "n_small_cells") {
    cfg.n_small_cells = as_int(field);
  } else if (field == "n_mues") {
    cfg.n_mues = as_int(field);
  } else if (field == "sues_per_cell") {
    cfg.sues_per_cell = as_int(field);
  } else if (field == "max_mues_per_band") {
    cfg.max_mues_per_band = as_int(field);
  } else if (field == "bandwidth_hz") {
    cfg.bandwidth_hz = value;
  } else if (field == "total_power_w") {
    cfg.total_power_w = value;
  } else if (field == "circuit_power_per_band_w") {
    cfg.circuit_power_per_band_w = value;
  } else if (field == "macro_radius_m") {
    cfg.macro_radius_m = value;
  } else if (field == "small_radius_m") {
    cfg.small_radius_m = value;
  } else if (field == "wall_loss_db") {
    cfg.wall_loss_db = value;
  } else if (field == "noise_psd_dbm_hz") {
    cfg.noise_psd_dbm_hz = value;
  } else if (field == "csi_error_var") {
    cfg.csi_error_var = value;
  } else if (field == "ftpa_alpha") {
    cfg.ftpa_alpha = value;
  } else if (field == "rate_min_bps") {
    cfg.rate_min_bps = value;
  } else if (field == "outage_eps") {
    cfg.outage_eps = value;
  } else {
    throw ConfigError("unknown sweep field '" + field + "'");
  }
  cfg.validate();
}

}  // namespace nomahet
