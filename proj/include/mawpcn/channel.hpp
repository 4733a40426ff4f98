#ifndef MAWPCN_CHANNEL_HPP
#define MAWPCN_CHANNEL_HPP

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "mawpcn/params.hpp"

namespace mawpcn {

/// Antenna coordinate inside a square moving region, relative to the
/// region's reference point.
using Position = Eigen::Vector2d;

/// One row per path: [sin(theta) cos(phi), cos(theta)].
template <typename Scalar>
using PathDirections = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Geometric channel between the HAP and one wireless device. The
/// path-response matrix is diagonal, so only its diagonal is stored.
struct WdChannel {
  Eigen::VectorXd aod_elevation;
  Eigen::VectorXd aod_azimuth;
  Eigen::VectorXd aoa_elevation;
  Eigen::VectorXd aoa_azimuth;
  Eigen::VectorXcd path_gains;
  double distance_m = 1.0;
  Eigen::Vector2d location = Eigen::Vector2d::Zero();

  PathDirections<double> tx_directions;
  PathDirections<double> rx_directions;

  Eigen::Index num_paths() const { return path_gains.size(); }
};

struct ChannelRealization {
  double wavelength_m = 0.06;
  std::vector<WdChannel> wds;

  int num_wds() const { return static_cast<int>(wds.size()); }
};

template <typename Derived>
PathDirections<typename Derived::Scalar> path_directions(const Eigen::MatrixBase<Derived>& elevation,
                                                         const Eigen::MatrixBase<Derived>& azimuth) {
  using Scalar = typename Derived::Scalar;
  PathDirections<Scalar> dirs(elevation.size(), 2);
  dirs.col(0) = (elevation.array().sin() * azimuth.array().cos()).matrix();
  dirs.col(1) = elevation.array().cos().matrix();
  return dirs;
}

/// exp(j 2 pi / lambda * pos^T a_i) for every path direction a_i.
template <typename DirDerived, typename PosDerived>
ComplexVector<typename DirDerived::Scalar> field_response(const Eigen::MatrixBase<DirDerived>& directions,
                                                          const Eigen::MatrixBase<PosDerived>& pos,
                                                          typename DirDerived::Scalar wavelength) {
  using Scalar = typename DirDerived::Scalar;
  const Scalar wavenumber = 2 * std::numbers::pi_v<Scalar> / wavelength;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> phase = wavenumber * (directions * pos);
  ComplexVector<Scalar> out(phase.size());
  for (Eigen::Index i = 0; i < phase.size(); ++i) out[i] = std::polar(Scalar(1), phase[i]);
  return out;
}

/// Builds a device channel from angles and path gains; the direction tables
/// are derived here so they always agree with the angles.
WdChannel make_wd_channel(Eigen::VectorXd aod_elevation, Eigen::VectorXd aod_azimuth,
                          Eigen::VectorXd aoa_elevation, Eigen::VectorXd aoa_azimuth,
                          Eigen::VectorXcd path_gains, double distance_m,
                          const Eigen::Vector2d& location = Eigen::Vector2d::Zero());

/// g_k(pos), the HAP-side (transmit) field-response vector.
Eigen::VectorXcd transmit_field_response(const Position& pos, const ChannelRealization& realization,
                                         int wd_index);

/// f_k(pos), the device-side (receive) field-response vector.
Eigen::VectorXcd receive_field_response(const Position& pos, const ChannelRealization& realization,
                                        int wd_index);

/// Downlink coefficient h = f(u)^H Sigma g(w).
std::complex<double> channel_coefficient(const Position& hap_pos, const Position& wd_pos,
                                         const ChannelRealization& realization, int wd_index);

/// Uplink coefficient g(w)^H Sigma^H f(u), the conjugate of the downlink one.
std::complex<double> uplink_coefficient(const Position& hap_pos, const Position& wd_pos,
                                        const ChannelRealization& realization, int wd_index);

/// splitmix64 finaliser applied to (seed, index); used to derive independent
/// per-trial and per-purpose seeds from one master seed.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

/// Device locations drawn uniformly over the 1.5 m disk centred at [10, 0].
std::vector<Eigen::Vector2d> sample_wd_locations(std::uint64_t seed, int num_wds);

/// Draws angles i.i.d. uniform on [0, pi] and diagonal path gains
/// i.i.d. CN(0, c_k^2 / L) with c_k^2 = C0 D_k^-alpha. The HAP sits at the
/// origin. Deterministic given the seed.
ChannelRealization generate_realization(std::uint64_t seed, const SystemParams& params,
                                        const std::vector<Eigen::Vector2d>& wd_locations);

}  // namespace mawpcn

#endif  // MAWPCN_CHANNEL_HPP
