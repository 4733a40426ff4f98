#ifndef MAWPCN_CONTINUOUS_SOLVER_HPP
#define MAWPCN_CONTINUOUS_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mawpcn/channel.hpp"
#include "mawpcn/params.hpp"
#include "mawpcn/solve_result.hpp"

namespace mawpcn {

struct SolverOptions {
  double epsilon = 1e-4;
  int max_iters = 200;
  /// Antennas allowed to move: index 0 is the HAP, 1..K the devices. Empty
  /// means all of them.
  std::vector<bool> movable;
  /// Starting point; defaults are the reference points and tau1 = T / 2.
  std::optional<Position> initial_hap;
  std::optional<std::vector<Position>> initial_wds;
  std::optional<double> initial_tau1;
  /// Extra runs from uniformly random starting positions; the best result
  /// is returned. Off by default.
  int restarts = 0;
  std::uint64_t restart_seed = 0;
  /// When set, the iteration trace of the returned run is written here.
  std::string trace_csv_path;
};

struct ContinuousSolveState {
  Position hap_pos = Position::Zero();
  std::vector<Position> wd_pos;
  double tau1_s = 0;
  std::vector<double> objective_trace;
  int iterations = 0;
};

/// Objective of the simplified continuous problem at a state.
double continuous_objective(const ContinuousSolveState& state, const ChannelRealization& realization,
                            const SystemParams& params);

/// mu_k = zeta P_A tau1 / (sigma^2 (T - tau1)); identical for all devices.
double rate_weight(double tau1_s, const SystemParams& params);

/// Projects onto the moving region [-A/2, A/2]^2.
Position clamp_to_region(const Position& p, const SystemParams& params);

/// One SCA update of the HAP position: exact maximiser over the region of
/// sum_k mu_k Omega_k^lb. The surrogate Hessian is a multiple of the
/// identity, so clamping the unconstrained maximiser is exact.
Position sca_step_hap(const ContinuousSolveState& state, const ChannelRealization& realization,
                      const SystemParams& params);

/// One SCA update of device k's position: u + grad U / delta, clamped.
Position sca_step_wd(const ContinuousSolveState& state, int wd_index,
                     const ChannelRealization& realization, const SystemParams& params);

/// Alternating optimisation: HAP step, device steps, closed-form tau1, until
/// the fractional objective increase drops below epsilon or max_iters is hit
/// (then converged = false).
SolveResult solve_continuous(const ChannelRealization& realization, const SystemParams& params,
                             const SolverOptions& options = {});

}  // namespace mawpcn

#endif  // MAWPCN_CONTINUOUS_SOLVER_HPP
