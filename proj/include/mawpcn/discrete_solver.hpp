#ifndef MAWPCN_DISCRETE_SOLVER_HPP
#define MAWPCN_DISCRETE_SOLVER_HPP

#include <vector>

#include <Eigen/Dense>

#include "mawpcn/channel.hpp"
#include "mawpcn/continuous_solver.hpp"
#include "mawpcn/params.hpp"
#include "mawpcn/solve_result.hpp"

namespace mawpcn {

/// Square lattice of candidate positions with pitch d, anchored at the
/// corner (-A/2, -A/2). Row-major with x varying fastest. When A/d is not an
/// integer the lattice stops inside the region.
struct CandidateGrid {
  std::vector<Position> positions;
  int per_axis = 0;
  double pitch_m = 0;

  int count() const { return static_cast<int>(positions.size()); }
  const Position& at(int index) const { return positions.at(static_cast<std::size_t>(index)); }
  /// Index of the point closest to p; lowest index on ties.
  int nearest_index(const Position& p) const;
};

/// Throws std::invalid_argument when d > A.
CandidateGrid build_grid(const SystemParams& params);

struct DiscreteSolveState {
  int hap_index = 0;
  std::vector<int> wd_index;
  double tau1_s = 0;
  std::vector<double> objective_trace;
};

/// Field responses of every device at every candidate: the HAP-side G_k and
/// the device-side F_k, each L x N.
struct SteeringTables {
  std::vector<Eigen::MatrixXcd> hap;  // G_k = [g_k(p_1) ... g_k(p_N)]
  std::vector<Eigen::MatrixXcd> wd;   // F_k = [f_k(q_1) ... f_k(q_N)]
};

SteeringTables build_steering_tables(const CandidateGrid& grid, const ChannelRealization& realization);

/// argmax_m sum_k mu_k |[o_k]_m|^4 with o_k^H = y_k^H G_k; lowest index on
/// ties. mu is common to all devices, so only its sign matters; a zero mu
/// (tau1 = 0) is treated as one.
int select_hap_index(const DiscreteSolveState& state, const SteeringTables& tables,
                     const ChannelRealization& realization, const SystemParams& params);
int select_hap_index(const DiscreteSolveState& state, const CandidateGrid& grid,
                     const ChannelRealization& realization, const SystemParams& params);

/// argmax_n |[z_k]_n|^4 with z_k = F_k^H x_k; lowest index on ties.
int select_wd_index(const DiscreteSolveState& state, int wd_index, const SteeringTables& tables,
                    const ChannelRealization& realization);
int select_wd_index(const DiscreteSolveState& state, int wd_index, const CandidateGrid& grid,
                    const ChannelRealization& realization);

/// Objective of the simplified discrete problem at a state.
double discrete_objective(const DiscreteSolveState& state, const SteeringTables& tables,
                          const ChannelRealization& realization, const SystemParams& params);

/// Block coordinate ascent over the HAP index, the device indices and tau1,
/// starting from the candidate nearest the reference point. Stops once a
/// full sweep leaves every index unchanged and the fractional objective
/// increase is below epsilon. Only epsilon and max_iters of the options
/// are used.
SolveResult solve_discrete(const ChannelRealization& realization, const SystemParams& params,
                           const SolverOptions& options = {});
SolveResult solve_discrete(const ChannelRealization& realization, const SystemParams& params,
                           const CandidateGrid& grid, const SolverOptions& options = {});

}  // namespace mawpcn

#endif  // MAWPCN_DISCRETE_SOLVER_HPP
