#include "mawpcn/time_allocation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mawpcn/lambert_w.hpp"

namespace mawpcn {

double snr_constant(std::span<const double> channel_gains_sq, const SystemParams& params) {
  double sum = 0;
  for (double g : channel_gains_sq) sum += g * g;
  return params.energy_efficiency * params.hap_power_w * sum / params.noise_power_w;
}

double harvest_transmit_throughput(double c, double tau1, double total_time) {
  const double uplink = total_time - tau1;
  if (uplink <= 0 || tau1 <= 0) return 0.0;
  return uplink * std::log1p(c * tau1 / uplink) / std::numbers::ln2;
}

double optimal_tau1(double c, double total_time) {
  if (!(c >= 0)) throw std::invalid_argument("optimal_tau1: c must be >= 0");
  if (!(total_time > 0)) throw std::invalid_argument("optimal_tau1: T must be > 0");
  if (c == 0) return 0.0;

  // W((c - 1) / e) sits at offset c / e from the branch point.
  const double w = lambert_w0_branch_offset(c / std::numbers::e);
  // exp(W + 1) - 1; for large arguments use e^W = x / W to stay in range.
  double growth_minus_one;
  if (c > 4 && w > 0) {
    growth_minus_one = (c - 1) / w - 1;
  } else {
    growth_minus_one = std::expm1(w + 1);
  }
  return total_time * growth_minus_one / (c + growth_minus_one);
}

}  // namespace mawpcn
