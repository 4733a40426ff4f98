#ifndef MAWPCN_BASELINES_HPP
#define MAWPCN_BASELINES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mawpcn/channel.hpp"
#include "mawpcn/continuous_solver.hpp"
#include "mawpcn/discrete_solver.hpp"
#include "mawpcn/params.hpp"
#include "mawpcn/solve_result.hpp"

namespace mawpcn {

enum class Scheme { continuous, discrete, partial, random, fpa, fpa_comp };

/// CLI / CSV tag: cont, disc, partial, random, fpa, fpa_comp.
std::string_view scheme_tag(Scheme scheme);
/// Throws std::invalid_argument on an unknown tag.
Scheme parse_scheme(std::string_view tag);

struct BaselineResult {
  Scheme scheme = Scheme::fpa;
  double sum_throughput = 0;
  double tau1_s = 0;
  double total_time_used_s = 0;  // T, or T + tau0 with compensation
  /// Compensation time; 0 for every scheme except fpa_comp.
  double tau0_s = 0;
  double hap_energy_j = 0;
  int iterations = 0;
  bool converged = true;
};

BaselineResult to_baseline(Scheme scheme, const SolveResult& result, const SystemParams& params);

/// Every antenna at its reference point, tau1 optimised over T.
BaselineResult fpa_no_compensation(const ChannelRealization& realization, const SystemParams& params);

/// Time an MA system needs to move every antenna from its reference point
/// to the given positions: max over antennas of ||p||_1 / v.
double compensation_time(const Position& hap_pos, std::span<const Position> wd_pos, double speed_mps);

/// Fixed antennas given T + tau0 seconds, where tau0 is the initial
/// movement time of the continuous solution. Throws std::invalid_argument
/// when that solution does not match the realization.
BaselineResult fpa_with_compensation(const ChannelRealization& realization, const SystemParams& params,
                                     const SolveResult& continuous_result);

/// Best of n_samples uniformly drawn grid placements, each with optimal tau1.
BaselineResult random_ma(const ChannelRealization& realization, const SystemParams& params,
                         const CandidateGrid& grid, int n_samples, std::uint64_t seed);

/// ceil((K + 1) / 2) of the K + 1 antennas chosen uniformly to be movable;
/// index 0 is the HAP.
std::vector<bool> select_movable_antennas(int num_wds, std::uint64_t seed);

/// Continuous solver with only the selected antennas allowed to move.
SolveResult partially_ma(const ChannelRealization& realization, const SystemParams& params,
                         const std::vector<bool>& movable, const SolverOptions& options = {});
SolveResult partially_ma(const ChannelRealization& realization, const SystemParams& params,
                         std::uint64_t seed, const SolverOptions& options = {});

}  // namespace mawpcn

#endif  // MAWPCN_BASELINES_HPP
