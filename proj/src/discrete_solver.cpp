#include "mawpcn/discrete_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mawpcn/time_allocation.hpp"

namespace mawpcn {

namespace {

Eigen::MatrixXcd responses_at(const PathDirections<double>& directions, const CandidateGrid& grid,
                              double wavelength) {
  Eigen::MatrixXcd out(directions.rows(), grid.count());
  for (int n = 0; n < grid.count(); ++n) out.col(n) = field_response(directions, grid.at(n), wavelength);
  return out;
}

// Lowest index wins ties.
int argmax(const Eigen::VectorXd& scores) {
  int best = 0;
  for (Eigen::Index i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = static_cast<int>(i);
  return best;
}

// |h_k|^2 for every device at the state's indices.
std::vector<double> state_gains_sq(const DiscreteSolveState& state, const SteeringTables& tables,
                                   const ChannelRealization& realization) {
  std::vector<double> gains(realization.wds.size());
  for (std::size_t k = 0; k < gains.size(); ++k) {
    const auto g = tables.hap[k].col(state.hap_index);
    const auto f = tables.wd[k].col(state.wd_index[k]);
    gains[k] = std::norm(f.dot(realization.wds[k].path_gains.cwiseProduct(g)));
  }
  return gains;
}

}  // namespace

int CandidateGrid::nearest_index(const Position& p) const {
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count(); ++i) {
    const double dist = (at(i) - p).squaredNorm();
    if (dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

CandidateGrid build_grid(const SystemParams& params) {
  const double side = params.region_size_m;
  const double pitch = params.step_size_m;
  if (!(pitch > 0) || pitch > side * (1 + 1e-12))
    throw std::invalid_argument("build_grid: step size must be in (0, A]");

  CandidateGrid grid;
  grid.pitch_m = pitch;
  grid.per_axis = static_cast<int>(std::floor(side / pitch + 1e-9)) + 1;
  std::vector<double> coords(static_cast<std::size_t>(grid.per_axis));
  for (int i = 0; i < grid.per_axis; ++i) {
    double c = -side / 2 + i * pitch;
    if (std::abs(c) < 1e-12 * side) c = 0.0;
    coords[static_cast<std::size_t>(i)] = std::min(c, side / 2);
  }
  grid.positions.reserve(coords.size() * coords.size());
  for (double y : coords)
    for (double x : coords) grid.positions.emplace_back(x, y);
  return grid;
}

SteeringTables build_steering_tables(const CandidateGrid& grid, const ChannelRealization& realization) {
  SteeringTables tables;
  for (const auto& wd : realization.wds) {
    tables.hap.push_back(responses_at(wd.tx_directions, grid, realization.wavelength_m));
    tables.wd.push_back(responses_at(wd.rx_directions, grid, realization.wavelength_m));
  }
  return tables;
}

int select_hap_index(const DiscreteSolveState& state, const SteeringTables& tables,
                     const ChannelRealization& realization, const SystemParams& params) {
  double mu = rate_weight(state.tau1_s, params);
  if (mu == 0) mu = 1;
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(tables.hap.front().cols());
  for (std::size_t k = 0; k < realization.wds.size(); ++k) {
    // y_k = Sigma_k^H f_k(q), o_k = G_k^H y_k
    const Eigen::VectorXcd y =
        realization.wds[k].path_gains.conjugate().cwiseProduct(tables.wd[k].col(state.wd_index[k]));
    const Eigen::VectorXcd o = tables.hap[k].adjoint() * y;
    scores += mu * o.cwiseAbs2().cwiseAbs2();
  }
  return argmax(scores);
}

int select_hap_index(const DiscreteSolveState& state, const CandidateGrid& grid,
                     const ChannelRealization& realization, const SystemParams& params) {
  return select_hap_index(state, build_steering_tables(grid, realization), realization, params);
}

int select_wd_index(const DiscreteSolveState& state, int wd_index, const SteeringTables& tables,
                    const ChannelRealization& realization) {
  const auto k = static_cast<std::size_t>(wd_index);
  // x_k = Sigma_k g_k(p), z_k = F_k^H x_k
  const Eigen::VectorXcd x = realization.wds.at(k).path_gains.cwiseProduct(tables.hap[k].col(state.hap_index));
  const Eigen::VectorXcd z = tables.wd[k].adjoint() * x;
  return argmax(z.cwiseAbs2().cwiseAbs2());
}

int select_wd_index(const DiscreteSolveState& state, int wd_index, const CandidateGrid& grid,
                    const ChannelRealization& realization) {
  return select_wd_index(state, wd_index, build_steering_tables(grid, realization), realization);
}

double discrete_objective(const DiscreteSolveState& state, const SteeringTables& tables,
                          const ChannelRealization& realization, const SystemParams& params) {
  return harvest_transmit_throughput(snr_constant(state_gains_sq(state, tables, realization), params),
                                     state.tau1_s, params.total_time_s);
}

SolveResult solve_discrete(const ChannelRealization& realization, const SystemParams& params,
                           const SolverOptions& options) {
  return solve_discrete(realization, params, build_grid(params), options);
}

SolveResult solve_discrete(const ChannelRealization& realization, const SystemParams& params,
                           const CandidateGrid& grid, const SolverOptions& options) {
  const int num_wds = realization.num_wds();
  const SteeringTables tables = build_steering_tables(grid, realization);
  const int reference = grid.nearest_index(Position::Zero());

  DiscreteSolveState state;
  state.hap_index = reference;
  state.wd_index.assign(static_cast<std::size_t>(num_wds), reference);
  state.tau1_s = params.total_time_s / 2;

  std::vector<IterationRecord> records;
  double objective = discrete_objective(state, tables, realization, params);
  state.objective_trace.push_back(objective);
  records.push_back({0, objective, state.tau1_s, grid.at(state.hap_index)});

  int iterations = 0;
  bool converged = false;
  while (iterations < options.max_iters) {
    const DiscreteSolveState before = state;
    state.hap_index = select_hap_index(state, tables, realization, params);
    for (int k = 0; k < num_wds; ++k)
      state.wd_index[static_cast<std::size_t>(k)] = select_wd_index(state, k, tables, realization);
    state.tau1_s = optimal_tau1(snr_constant(state_gains_sq(state, tables, realization), params),
                                params.total_time_s);
    ++iterations;

    const double previous = objective;
    objective = discrete_objective(state, tables, realization, params);
    state.objective_trace.push_back(objective);
    records.push_back({iterations, objective, state.tau1_s, grid.at(state.hap_index)});

    const bool unchanged = state.hap_index == before.hap_index && state.wd_index == before.wd_index;
    const bool flat = previous > 0 ? (objective - previous) / previous < options.epsilon : objective == 0;
    if (unchanged && flat) {
      converged = true;
      break;
    }
  }

  std::vector<Position> wd_pos;
  for (int n : state.wd_index) wd_pos.push_back(grid.at(n));
  SolveResult out = make_result(realization, params, grid.at(state.hap_index), wd_pos, state.tau1_s);
  out.hap_index = state.hap_index;
  out.wd_index = state.wd_index;
  out.objective_trace = std::move(state.objective_trace);
  out.records = std::move(records);
  out.iterations = iterations;
  out.converged = converged;
  return out;
}

}  // namespace mawpcn
