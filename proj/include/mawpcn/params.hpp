#ifndef MAWPCN_PARAMS_HPP
#define MAWPCN_PARAMS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

namespace mawpcn {

/// Physical and protocol constants of one network configuration, all in SI
/// units. dBm quantities are converted once, when the struct is built from a
/// configuration.
struct SystemParams {
  double wavelength_m = 0.06;
  double hap_power_w = 10.0;
  double noise_power_w = 1e-12;
  double energy_efficiency = 0.5;
  double total_time_s = 3.0;
  double region_size_m = 5 * 0.06;
  double step_size_m = 0.06 / 4;
  double ma_speed_mps = 0.125;
  double step_time_s = (0.06 / 4) / 0.125;
  int num_wds = 5;
  int num_paths = 10;
  double pathloss_exponent = 2.8;
  double ref_gain = 0.0;  // (lambda / 4 pi)^2, filled by make_params()

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

/// Key/value configuration as read from a JSON file. Field names match the
/// file keys.
struct Config {
  /// Wavelength is taken as 0.3 / freq_ghz metres (c rounded to 3e8 m/s).
  double freq_ghz = 5.0;
  double p_hap_dbm = 40.0;
  double noise_dbm = -90.0;
  double zeta = 0.5;
  double T_s = 3.0;
  double A_over_lambda = 5.0;
  double d_over_lambda = 0.25;
  double v_mps = 0.125;
  /// Seconds per discrete step; <= 0 means d / v.
  double step_time_s = 0.0;
  int K = 5;
  int L = 10;
  double alpha = 2.8;
  int n_trials = 100;
  std::uint64_t master_seed = 1;
};

double dbm_to_watts(double p_dbm);

double path_loss(double distance_m, const SystemParams& params);

/// Converts a configuration into validated SI parameters.
SystemParams make_params(const Config& config);

/// Reference scenario (5 GHz, 40 dBm, -90 dBm, T = 3 s, A = 5 lambda,
/// d = lambda / 4, v = 0.125 m/s, K = 5, L = 10, alpha = 2.8).
SystemParams default_params();

/// Parses a JSON config. Unknown keys are ignored; missing keys keep their
/// defaults. Throws std::invalid_argument on type or range errors.
Config parse_config(std::istream& in);
Config load_config(const std::string& path);

}  // namespace mawpcn

#endif  // MAWPCN_PARAMS_HPP
