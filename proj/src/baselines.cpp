#include "mawpcn/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mawpcn/time_allocation.hpp"

namespace mawpcn {

std::string_view scheme_tag(Scheme scheme) {
  switch (scheme) {
    case Scheme::continuous: return "cont";
    case Scheme::discrete: return "disc";
    case Scheme::partial: return "partial";
    case Scheme::random: return "random";
    case Scheme::fpa: return "fpa";
    case Scheme::fpa_comp: return "fpa_comp";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view tag) {
  for (Scheme s : {Scheme::continuous, Scheme::discrete, Scheme::partial, Scheme::random, Scheme::fpa,
                   Scheme::fpa_comp})
    if (scheme_tag(s) == tag) return s;
  throw std::invalid_argument("unknown scheme '" + std::string(tag) + "'");
}

BaselineResult to_baseline(Scheme scheme, const SolveResult& result, const SystemParams& params) {
  BaselineResult b;
  b.scheme = scheme;
  b.sum_throughput = result.sum_throughput_bits_per_hz;
  b.tau1_s = result.tau1_s;
  b.total_time_used_s = params.total_time_s;
  b.hap_energy_j = result.hap_energy_j;
  b.iterations = result.iterations;
  b.converged = result.converged;
  return b;
}

BaselineResult fpa_no_compensation(const ChannelRealization& realization, const SystemParams& params) {
  const std::vector<Position> reference(realization.wds.size(), Position::Zero());
  const double c = snr_constant(channel_gains_sq(realization, Position::Zero(), reference), params);
  BaselineResult b;
  b.scheme = Scheme::fpa;
  b.tau1_s = optimal_tau1(c, params.total_time_s);
  b.sum_throughput = harvest_transmit_throughput(c, b.tau1_s, params.total_time_s);
  b.total_time_used_s = params.total_time_s;
  b.hap_energy_j = params.hap_power_w * b.tau1_s;
  return b;
}

double compensation_time(const Position& hap_pos, std::span<const Position> wd_pos, double speed_mps) {
  double longest = hap_pos.lpNorm<1>();
  for (const auto& p : wd_pos) longest = std::max(longest, p.lpNorm<1>());
  return longest / speed_mps;
}

BaselineResult fpa_with_compensation(const ChannelRealization& realization, const SystemParams& params,
                                     const SolveResult& continuous_result) {
  if (static_cast<int>(continuous_result.wd_pos.size()) != realization.num_wds())
    throw std::invalid_argument("fpa_with_compensation: continuous result missing or mismatched");

  const std::vector<Position> reference(realization.wds.size(), Position::Zero());
  const double c = snr_constant(channel_gains_sq(realization, Position::Zero(), reference), params);
  BaselineResult b;
  b.scheme = Scheme::fpa_comp;
  b.tau0_s = compensation_time(continuous_result.hap_pos, continuous_result.wd_pos, params.ma_speed_mps);
  b.total_time_used_s = params.total_time_s + b.tau0_s;
  b.tau1_s = optimal_tau1(c, b.total_time_used_s);
  b.sum_throughput = harvest_transmit_throughput(c, b.tau1_s, b.total_time_used_s);
  b.hap_energy_j = params.hap_power_w * b.tau1_s;
  return b;
}

BaselineResult random_ma(const ChannelRealization& realization, const SystemParams& params,
                         const CandidateGrid& grid, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("random_ma: need at least one sample");
  const SteeringTables tables = build_steering_tables(grid, realization);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, grid.count() - 1);

  DiscreteSolveState state;
  state.wd_index.resize(realization.wds.size());
  BaselineResult best;
  best.scheme = Scheme::random;
  best.sum_throughput = -1;
  for (int s = 0; s < n_samples; ++s) {
    state.hap_index = pick(rng);
    for (auto& n : state.wd_index) n = pick(rng);
    state.tau1_s = 0;
    std::vector<double> gains(realization.wds.size());
    for (std::size_t k = 0; k < gains.size(); ++k) {
      const auto g = tables.hap[k].col(state.hap_index);
      const auto f = tables.wd[k].col(state.wd_index[k]);
      gains[k] = std::norm(f.dot(realization.wds[k].path_gains.cwiseProduct(g)));
    }
    const double c = snr_constant(gains, params);
    const double tau1 = optimal_tau1(c, params.total_time_s);
    const double value = harvest_transmit_throughput(c, tau1, params.total_time_s);
    if (value > best.sum_throughput) {
      best.sum_throughput = value;
      best.tau1_s = tau1;
    }
  }
  best.total_time_used_s = params.total_time_s;
  best.hap_energy_j = params.hap_power_w * best.tau1_s;
  best.iterations = n_samples;
  return best;
}

std::vector<bool> select_movable_antennas(int num_wds, std::uint64_t seed) {
  const int total = num_wds + 1;
  const int chosen = (total + 1) / 2;
  std::vector<int> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<bool> movable(static_cast<std::size_t>(total), false);
  for (int i = 0; i < chosen; ++i) movable[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;
  return movable;
}

SolveResult partially_ma(const ChannelRealization& realization, const SystemParams& params,
                         const std::vector<bool>& movable, const SolverOptions& options) {
  SolverOptions masked = options;
  masked.movable = movable;
  return solve_continuous(realization, params, masked);
}

SolveResult partially_ma(const ChannelRealization& realization, const SystemParams& params,
                         std::uint64_t seed, const SolverOptions& options) {
  return partially_ma(realization, params, select_movable_antennas(realization.num_wds(), seed), options);
}

}  // namespace mawpcn
