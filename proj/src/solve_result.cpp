#include "mawpcn/solve_result.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "mawpcn/time_allocation.hpp"

namespace mawpcn {

std::vector<double> channel_gains_sq(const ChannelRealization& realization, const Position& hap_pos,
                                     std::span<const Position> wd_pos) {
  if (static_cast<int>(wd_pos.size()) != realization.num_wds())
    throw std::invalid_argument("channel_gains_sq: one position per device required");
  std::vector<double> gains(wd_pos.size());
  for (std::size_t k = 0; k < wd_pos.size(); ++k)
    gains[k] = std::norm(channel_coefficient(hap_pos, wd_pos[k], realization, static_cast<int>(k)));
  return gains;
}

SolveResult make_result(const ChannelRealization& realization, const SystemParams& params,
                        const Position& hap_pos, std::span<const Position> wd_pos, double tau1_s) {
  SolveResult r;
  r.hap_pos = hap_pos;
  r.wd_pos.assign(wd_pos.begin(), wd_pos.end());
  r.tau1_s = tau1_s;
  r.tau3_s = params.total_time_s - tau1_s;
  r.channel_gain_sq = channel_gains_sq(realization, hap_pos, wd_pos);
  r.snr_constant = snr_constant(r.channel_gain_sq, params);
  r.sum_throughput_bits_per_hz = harvest_transmit_throughput(r.snr_constant, tau1_s, params.total_time_s);
  r.power_w.resize(r.channel_gain_sq.size(), 0.0);
  if (r.tau3_s > 0) {
    for (std::size_t k = 0; k < r.power_w.size(); ++k)
      r.power_w[k] =
          params.energy_efficiency * params.hap_power_w * r.channel_gain_sq[k] * tau1_s / r.tau3_s;
  }
  r.hap_energy_j = params.hap_power_w * tau1_s;
  return r;
}

std::vector<double> per_user_rates(const SolveResult& result, std::span<const int> decoding_order,
                                   const SystemParams& params) {
  const std::size_t num = result.power_w.size();
  if (decoding_order.size() != num) throw std::invalid_argument("per_user_rates: order size mismatch");
  std::vector<bool> seen(num, false);
  for (int rank : decoding_order) {
    if (rank < 0 || static_cast<std::size_t>(rank) >= num || seen[static_cast<std::size_t>(rank)])
      throw std::invalid_argument("per_user_rates: decoding order is not a permutation");
    seen[static_cast<std::size_t>(rank)] = true;
  }

  std::vector<double> rx_power(num);
  for (std::size_t k = 0; k < num; ++k) rx_power[k] = result.power_w[k] * result.channel_gain_sq[k];

  std::vector<double> rates(num, 0.0);
  if (result.tau3_s <= 0) return rates;
  for (std::size_t k = 0; k < num; ++k) {
    double interference = 0;
    for (std::size_t j = 0; j < num; ++j)
      if (decoding_order[j] > decoding_order[k]) interference += rx_power[j];
    rates[k] = result.tau3_s * std::log1p(rx_power[k] / (interference + params.noise_power_w)) /
               std::numbers::ln2;
  }
  return rates;
}

void write_trace_csv(std::ostream& out, const SolveResult& result) {
  out << "iter,objective,tau1,hap_x,hap_y\n";
  char line[160];
  for (const auto& rec : result.records) {
    std::snprintf(line, sizeof line, "%d,%.12g,%.12g,%.12g,%.12g\n", rec.iteration, rec.objective,
                  rec.tau1_s, rec.hap_pos.x(), rec.hap_pos.y());
    out << line;
  }
}

}  // namespace mawpcn
