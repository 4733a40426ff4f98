#include "mawpcn/continuous_solver.hpp"

#include <fstream>
#include <random>
#include <stdexcept>

#include "mawpcn/fourth_power.hpp"
#include "mawpcn/time_allocation.hpp"

namespace mawpcn {

namespace {

bool is_movable(const SolverOptions& options, std::size_t antenna) {
  return options.movable.empty() || options.movable.at(antenna);
}

double state_snr_constant(const ContinuousSolveState& state, const ChannelRealization& realization,
                          const SystemParams& params) {
  return snr_constant(channel_gains_sq(realization, state.hap_pos, state.wd_pos), params);
}

void record(SolveResult& out, const ContinuousSolveState& state, double objective) {
  out.records.push_back({static_cast<int>(out.records.size()), objective, state.tau1_s, state.hap_pos});
}

SolveResult run_from(ContinuousSolveState state, const ChannelRealization& realization,
                     const SystemParams& params, const SolverOptions& options) {
  const int num_wds = realization.num_wds();
  SolveResult trace;
  double objective = continuous_objective(state, realization, params);
  state.objective_trace.push_back(objective);
  record(trace, state, objective);

  bool converged = false;
  while (state.iterations < options.max_iters) {
    if (is_movable(options, 0)) state.hap_pos = sca_step_hap(state, realization, params);
    // Device subproblems are independent given the HAP position.
    std::vector<Position> next = state.wd_pos;
    for (int k = 0; k < num_wds; ++k)
      if (is_movable(options, static_cast<std::size_t>(k) + 1))
        next[static_cast<std::size_t>(k)] = sca_step_wd(state, k, realization, params);
    state.wd_pos = std::move(next);
    state.tau1_s = optimal_tau1(state_snr_constant(state, realization, params), params.total_time_s);
    ++state.iterations;

    const double previous = objective;
    objective = continuous_objective(state, realization, params);
    state.objective_trace.push_back(objective);
    record(trace, state, objective);

    if (previous > 0 ? (objective - previous) / previous < options.epsilon : objective == 0) {
      converged = true;
      break;
    }
  }

  SolveResult out = make_result(realization, params, state.hap_pos, state.wd_pos, state.tau1_s);
  out.objective_trace = std::move(state.objective_trace);
  out.records = std::move(trace.records);
  out.iterations = state.iterations;
  out.converged = converged;
  return out;
}

}  // namespace

double rate_weight(double tau1_s, const SystemParams& params) {
  const double uplink = params.total_time_s - tau1_s;
  if (uplink <= 0) throw std::domain_error("rate_weight: tau1 must be below T");
  return params.energy_efficiency * params.hap_power_w * tau1_s / (params.noise_power_w * uplink);
}

double continuous_objective(const ContinuousSolveState& state, const ChannelRealization& realization,
                            const SystemParams& params) {
  return harvest_transmit_throughput(state_snr_constant(state, realization, params), state.tau1_s,
                                     params.total_time_s);
}

Position clamp_to_region(const Position& p, const SystemParams& params) {
  const double half = params.region_size_m / 2;
  return p.cwiseMax(-half).cwiseMin(half);
}

Position sca_step_hap(const ContinuousSolveState& state, const ChannelRealization& realization,
                      const SystemParams& params) {
  const double mu = rate_weight(state.tau1_s, params);
  Eigen::Vector2d ascent = Eigen::Vector2d::Zero();
  double curvature = 0;
  for (int k = 0; k < realization.num_wds(); ++k) {
    const auto form = hap_objective_form(realization, k, state.wd_pos[static_cast<std::size_t>(k)]);
    ascent += mu * form.gradient(state.hap_pos);
    curvature += mu * form.curvature_bound();
  }
  if (curvature <= 0) return state.hap_pos;
  return clamp_to_region(state.hap_pos + ascent / curvature, params);
}

Position sca_step_wd(const ContinuousSolveState& state, int wd_index,
                     const ChannelRealization& realization, const SystemParams& params) {
  const Position& current = state.wd_pos.at(static_cast<std::size_t>(wd_index));
  const auto form = wd_objective_form(realization, wd_index, state.hap_pos);
  const double curvature = form.curvature_bound();
  if (curvature <= 0) return current;
  return clamp_to_region(current + form.gradient(current) / curvature, params);
}

SolveResult solve_continuous(const ChannelRealization& realization, const SystemParams& params,
                             const SolverOptions& options) {
  const int num_wds = realization.num_wds();
  if (!options.movable.empty() && static_cast<int>(options.movable.size()) != num_wds + 1)
    throw std::invalid_argument("solve_continuous: movable mask needs K + 1 entries");

  ContinuousSolveState start;
  start.hap_pos = clamp_to_region(options.initial_hap.value_or(Position::Zero()), params);
  start.wd_pos = options.initial_wds.value_or(std::vector<Position>(num_wds, Position::Zero()));
  if (static_cast<int>(start.wd_pos.size()) != num_wds)
    throw std::invalid_argument("solve_continuous: initial_wds needs K entries");
  for (auto& p : start.wd_pos) p = clamp_to_region(p, params);
  start.tau1_s = options.initial_tau1.value_or(params.total_time_s / 2);
  if (!(start.tau1_s >= 0 && start.tau1_s < params.total_time_s))
    throw std::invalid_argument("solve_continuous: initial tau1 must lie in [0, T)");

  SolveResult best = run_from(start, realization, params, options);

  if (options.restarts > 0) {
    std::mt19937_64 rng(options.restart_seed);
    std::uniform_real_distribution<double> coord(-params.region_size_m / 2, params.region_size_m / 2);
    for (int r = 0; r < options.restarts; ++r) {
      ContinuousSolveState alt = start;
      if (is_movable(options, 0)) alt.hap_pos = {coord(rng), coord(rng)};
      for (int k = 0; k < num_wds; ++k)
        if (is_movable(options, static_cast<std::size_t>(k) + 1))
          alt.wd_pos[static_cast<std::size_t>(k)] = {coord(rng), coord(rng)};
      SolveResult candidate = run_from(alt, realization, params, options);
      if (candidate.sum_throughput_bits_per_hz > best.sum_throughput_bits_per_hz)
        best = std::move(candidate);
    }
  }

  if (!options.trace_csv_path.empty()) {
    std::ofstream out(options.trace_csv_path);
    if (!out) throw std::runtime_error("cannot write trace to " + options.trace_csv_path);
    write_trace_csv(out, best);
  }
  return best;
}

}  // namespace mawpcn
