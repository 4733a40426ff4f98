#include "mawpcn/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mawpcn {

namespace {

const WdChannel& wd_at(const ChannelRealization& realization, int wd_index) {
  if (wd_index < 0 || wd_index >= realization.num_wds())
    throw std::out_of_range("wd_index out of range");
  return realization.wds[static_cast<std::size_t>(wd_index)];
}

}  // namespace

WdChannel make_wd_channel(Eigen::VectorXd aod_elevation, Eigen::VectorXd aod_azimuth,
                          Eigen::VectorXd aoa_elevation, Eigen::VectorXd aoa_azimuth,
                          Eigen::VectorXcd path_gains, double distance_m,
                          const Eigen::Vector2d& location) {
  const Eigen::Index paths = path_gains.size();
  if (aod_elevation.size() != paths || aod_azimuth.size() != paths ||
      aoa_elevation.size() != paths || aoa_azimuth.size() != paths)
    throw std::invalid_argument("make_wd_channel: angle and gain sizes differ");

  WdChannel wd;
  wd.tx_directions = path_directions(aod_elevation, aod_azimuth);
  wd.rx_directions = path_directions(aoa_elevation, aoa_azimuth);
  wd.aod_elevation = std::move(aod_elevation);
  wd.aod_azimuth = std::move(aod_azimuth);
  wd.aoa_elevation = std::move(aoa_elevation);
  wd.aoa_azimuth = std::move(aoa_azimuth);
  wd.path_gains = std::move(path_gains);
  wd.distance_m = distance_m;
  wd.location = location;
  return wd;
}

Eigen::VectorXcd transmit_field_response(const Position& pos, const ChannelRealization& realization,
                                         int wd_index) {
  return field_response(wd_at(realization, wd_index).tx_directions, pos, realization.wavelength_m);
}

Eigen::VectorXcd receive_field_response(const Position& pos, const ChannelRealization& realization,
                                        int wd_index) {
  return field_response(wd_at(realization, wd_index).rx_directions, pos, realization.wavelength_m);
}

std::complex<double> channel_coefficient(const Position& hap_pos, const Position& wd_pos,
                                         const ChannelRealization& realization, int wd_index) {
  const WdChannel& wd = wd_at(realization, wd_index);
  const Eigen::VectorXcd g = field_response(wd.tx_directions, hap_pos, realization.wavelength_m);
  const Eigen::VectorXcd f = field_response(wd.rx_directions, wd_pos, realization.wavelength_m);
  // f^H diag(sigma) g
  return f.dot(wd.path_gains.cwiseProduct(g));
}

std::complex<double> uplink_coefficient(const Position& hap_pos, const Position& wd_pos,
                                        const ChannelRealization& realization, int wd_index) {
  const WdChannel& wd = wd_at(realization, wd_index);
  const Eigen::VectorXcd g = field_response(wd.tx_directions, hap_pos, realization.wavelength_m);
  const Eigen::VectorXcd f = field_response(wd.rx_directions, wd_pos, realization.wavelength_m);
  // g^H diag(sigma)^H f
  return g.dot(wd.path_gains.conjugate().cwiseProduct(f));
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Eigen::Vector2d> sample_wd_locations(std::uint64_t seed, int num_wds) {
  constexpr double kRadius = 1.5;
  const Eigen::Vector2d centre(10.0, 0.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  std::vector<Eigen::Vector2d> out;
  out.reserve(static_cast<std::size_t>(num_wds));
  while (static_cast<int>(out.size()) < num_wds) {
    const Eigen::Vector2d p(unit(rng), unit(rng));
    if (p.squaredNorm() <= 1.0) out.emplace_back(centre + kRadius * p);
  }
  return out;
}

ChannelRealization generate_realization(std::uint64_t seed, const SystemParams& params,
                                        const std::vector<Eigen::Vector2d>& wd_locations) {
  if (static_cast<int>(wd_locations.size()) != params.num_wds)
    throw std::invalid_argument("generate_realization: need one location per device");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index paths = params.num_paths;

  ChannelRealization out;
  out.wavelength_m = params.wavelength_m;
  out.wds.reserve(wd_locations.size());
  for (const auto& loc : wd_locations) {
    const double distance = loc.norm();
    // CN(0, s^2): real and imaginary parts each N(0, s^2 / 2).
    const double part_sd = std::sqrt(path_loss(distance, params) / static_cast<double>(paths) / 2.0);

    auto draw_angles = [&] {
      Eigen::VectorXd v(paths);
      for (Eigen::Index i = 0; i < paths; ++i) v[i] = angle(rng);
      return v;
    };
    Eigen::VectorXd aod_el = draw_angles();
    Eigen::VectorXd aod_az = draw_angles();
    Eigen::VectorXd aoa_el = draw_angles();
    Eigen::VectorXd aoa_az = draw_angles();
    Eigen::VectorXcd gains(paths);
    for (Eigen::Index i = 0; i < paths; ++i) {
      const double re = part_sd * normal(rng);
      const double im = part_sd * normal(rng);
      gains[i] = {re, im};
    }
    out.wds.push_back(make_wd_channel(std::move(aod_el), std::move(aod_az), std::move(aoa_el),
                                      std::move(aoa_az), std::move(gains), distance, loc));
  }
  return out;
}

}  // namespace mawpcn
