#ifndef MAWPCN_TIME_ALLOCATION_HPP
#define MAWPCN_TIME_ALLOCATION_HPP

#include <span>

#include "mawpcn/params.hpp"

namespace mawpcn {

/// Effective SNR constant c = zeta P_A sum_k |h_k|^4 / sigma^2, from the
/// squared channel magnitudes |h_k|^2.
double snr_constant(std::span<const double> channel_gains_sq, const SystemParams& params);

/// (T - tau1) log2(1 + c tau1 / (T - tau1)): sum throughput in bits/Hz with
/// identical downlink/uplink positions and tight energy causality. Zero at
/// both tau1 = 0 and tau1 = T.
double harvest_transmit_throughput(double c, double tau1, double total_time);

/// Maximiser of harvest_transmit_throughput over tau1 in [0, T], in closed
/// form through the Lambert W function. Returns 0 for c = 0; throws
/// std::invalid_argument for c < 0 or T <= 0.
double optimal_tau1(double c, double total_time);

}  // namespace mawpcn

#endif  // MAWPCN_TIME_ALLOCATION_HPP
