#include "mawpcn/params.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace mawpcn {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw std::invalid_argument(field + ": " + what);
}

template <typename T>
void read_key(const nlohmann::json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string(key) + ": wrong type");
  }
}

}  // namespace

void SystemParams::validate() const {
  require(std::isfinite(wavelength_m) && wavelength_m > 0, "wavelength_m", "must be > 0");
  require(std::isfinite(hap_power_w) && hap_power_w > 0, "hap_power_w", "must be > 0");
  require(std::isfinite(noise_power_w) && noise_power_w > 0, "noise_power_w", "must be > 0");
  require(energy_efficiency > 0 && energy_efficiency <= 1, "energy_efficiency",
          "must lie in (0, 1]");
  require(std::isfinite(total_time_s) && total_time_s > 0, "total_time_s", "must be > 0");
  require(region_size_m > 0, "region_size_m", "must be > 0");
  require(region_size_m <= 8 * wavelength_m * (1 + 1e-12), "region_size_m",
          "must not exceed 8 wavelengths (far-field)");
  require(step_size_m > 0, "step_size_m", "must be > 0");
  require(ma_speed_mps > 0, "ma_speed_mps", "must be > 0");
  require(step_time_s > 0, "step_time_s", "must be > 0");
  require(num_wds >= 1, "num_wds", "must be >= 1");
  require(num_paths >= 1, "num_paths", "must be >= 1");
  require(pathloss_exponent > 0, "pathloss_exponent", "must be > 0");
  const double expected_gain = std::pow(wavelength_m / (4 * std::numbers::pi), 2);
  require(std::abs(ref_gain - expected_gain) <= 1e-12 * expected_gain, "ref_gain",
          "must equal (wavelength / 4 pi)^2");
}

double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

double path_loss(double distance_m, const SystemParams& params) {
  if (!(distance_m > 0)) throw std::invalid_argument("path_loss: distance must be > 0");
  return params.ref_gain * std::pow(distance_m, -params.pathloss_exponent);
}

SystemParams make_params(const Config& config) {
  require(config.freq_ghz > 0, "freq_ghz", "must be > 0");
  require(config.A_over_lambda > 0, "A_over_lambda", "must be > 0");
  require(config.d_over_lambda > 0, "d_over_lambda", "must be > 0");
  require(config.v_mps > 0, "v_mps", "must be > 0");
  require(config.n_trials >= 1, "n_trials", "must be >= 1");

  SystemParams p;
  p.wavelength_m = 0.3 / config.freq_ghz;
  p.hap_power_w = dbm_to_watts(config.p_hap_dbm);
  p.noise_power_w = dbm_to_watts(config.noise_dbm);
  p.energy_efficiency = config.zeta;
  p.total_time_s = config.T_s;
  p.region_size_m = config.A_over_lambda * p.wavelength_m;
  p.step_size_m = config.d_over_lambda * p.wavelength_m;
  p.ma_speed_mps = config.v_mps;
  p.step_time_s = config.step_time_s > 0 ? config.step_time_s : p.step_size_m / p.ma_speed_mps;
  p.num_wds = config.K;
  p.num_paths = config.L;
  p.pathloss_exponent = config.alpha;
  p.ref_gain = std::pow(p.wavelength_m / (4 * std::numbers::pi), 2);
  p.validate();
  return p;
}

SystemParams default_params() { return make_params(Config{}); }

Config parse_config(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

  Config c;
  read_key(j, "freq_ghz", c.freq_ghz);
  read_key(j, "p_hap_dbm", c.p_hap_dbm);
  read_key(j, "noise_dbm", c.noise_dbm);
  read_key(j, "zeta", c.zeta);
  read_key(j, "T_s", c.T_s);
  read_key(j, "A_over_lambda", c.A_over_lambda);
  read_key(j, "d_over_lambda", c.d_over_lambda);
  read_key(j, "v_mps", c.v_mps);
  read_key(j, "step_time_s", c.step_time_s);
  read_key(j, "K", c.K);
  read_key(j, "L", c.L);
  read_key(j, "alpha", c.alpha);
  read_key(j, "n_trials", c.n_trials);
  read_key(j, "master_seed", c.master_seed);
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  return parse_config(in);
}

}  // namespace mawpcn
