#ifndef MAWPCN_SOLVE_RESULT_HPP
#define MAWPCN_SOLVE_RESULT_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "mawpcn/channel.hpp"
#include "mawpcn/params.hpp"

namespace mawpcn {

struct IterationRecord {
  int iteration = 0;
  double objective = 0;
  double tau1_s = 0;
  Position hap_pos = Position::Zero();
};

/// Output of the continuous and discrete solvers. Downlink and uplink use
/// the same positions, the movement phase between them is empty, and the
/// uplink powers make energy causality tight:
///   tau3 = T - tau1,  p_k = zeta P_A |h_k|^2 tau1 / tau3.
struct SolveResult {
  Position hap_pos = Position::Zero();
  std::vector<Position> wd_pos;
  /// Grid indices; only filled by the discrete solver.
  int hap_index = -1;
  std::vector<int> wd_index;

  double tau1_s = 0;
  double tau3_s = 0;
  double snr_constant = 0;
  double sum_throughput_bits_per_hz = 0;
  std::vector<double> channel_gain_sq;  // |h_k|^2
  std::vector<double> power_w;          // p_k
  double hap_energy_j = 0;              // P_A tau1

  std::vector<double> objective_trace;
  std::vector<IterationRecord> records;
  int iterations = 0;
  bool converged = false;
};

/// Fills every derived field of a result from positions and tau1.
SolveResult make_result(const ChannelRealization& realization, const SystemParams& params,
                        const Position& hap_pos, std::span<const Position> wd_pos, double tau1_s);

/// Squared downlink channel magnitudes |h_k|^2 at the given positions.
std::vector<double> channel_gains_sq(const ChannelRealization& realization, const Position& hap_pos,
                                     std::span<const Position> wd_pos);

/// Per-device NOMA rates for a decoding order: decoding_order[k] is the rank
/// at which device k is decoded (0 first). Devices decoded later interfere
/// with earlier ones. Rates sum to the sum throughput for every order. Throws
/// std::invalid_argument if the order is not a permutation of 0..K-1.
std::vector<double> per_user_rates(const SolveResult& result, std::span<const int> decoding_order,
                                   const SystemParams& params);

/// CSV with header iter,objective,tau1,hap_x,hap_y.
void write_trace_csv(std::ostream& out, const SolveResult& result);

}  // namespace mawpcn

#endif  // MAWPCN_SOLVE_RESULT_HPP
