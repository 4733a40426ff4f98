#ifndef MAWPCN_TESTS_SUPPORT_HPP
#define MAWPCN_TESTS_SUPPORT_HPP

#include <cstdint>
#include <numbers>

#include "mawpcn/channel.hpp"
#include "mawpcn/params.hpp"

namespace mawpcn::testing {

inline SystemParams params_with(int num_wds, int num_paths) {
  Config c;
  c.K = num_wds;
  c.L = num_paths;
  return make_params(c);
}

inline ChannelRealization realization_for(std::uint64_t seed, const SystemParams& params) {
  return generate_realization(split_seed(seed, 1), params, sample_wd_locations(split_seed(seed, 0), params.num_wds));
}

// Every device gets one path with the given gain and broadside angles.
inline ChannelRealization single_path(int num_wds, std::complex<double> gain, double wavelength = 0.06) {
  ChannelRealization r;
  r.wavelength_m = wavelength;
  const Eigen::VectorXd half_pi = Eigen::VectorXd::Constant(1, std::numbers::pi / 2);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
  for (int k = 0; k < num_wds; ++k)
    r.wds.push_back(make_wd_channel(half_pi, zero, half_pi, zero, Eigen::VectorXcd::Constant(1, gain), 10.0));
  return r;
}

}  // namespace mawpcn::testing

#endif  // MAWPCN_TESTS_SUPPORT_HPP
