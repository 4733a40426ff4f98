#ifndef MAWPCN_FOURTH_POWER_HPP
#define MAWPCN_FOURTH_POWER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mawpcn/channel.hpp"

namespace mawpcn {

/// Fourth-power channel gain as a function of one antenna position,
///
///   F(p) = |w^H e(p)|^4,   e_i(p) = exp(j 2 pi / lambda * a_i^T p),
///
/// with every other position held fixed inside the weight vector w. The
/// HAP-side objective uses w = Sigma^H f(u) and the transmit directions; the
/// device-side objective uses w = Sigma g(w) and the receive directions.
/// The Gram matrix w w^H is the rank-one B_k (resp. D_k).
///
/// Value, gradient and Hessian are evaluated in O(L) through the complex
/// amplitude s(p) = w^H e(p). The isotropic curvature bound needs the
/// pairwise direction differences and costs O(L^4).
template <typename Scalar>
class QuarticForm {
 public:
  using Complex = std::complex<Scalar>;
  using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
  using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;
  using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  QuarticForm(ComplexVector<Scalar> weights, PathDirections<Scalar> directions, Scalar wavelength)
      : weights_(std::move(weights)),
        directions_(std::move(directions)),
        wavelength_(wavelength),
        wavenumber_(2 * std::numbers::pi_v<Scalar> / wavelength) {}

  const ComplexVector<Scalar>& weights() const { return weights_; }
  const PathDirections<Scalar>& directions() const { return directions_; }
  Scalar wavenumber() const { return wavenumber_; }
  Eigen::Index num_paths() const { return weights_.size(); }

  ComplexMatrix gram() const { return weights_ * weights_.adjoint(); }

  Complex amplitude(const Vector2& p) const { return weights_.dot(phases(p)); }

  Scalar value(const Vector2& p) const {
    const Scalar q = std::norm(amplitude(p));
    return q * q;
  }

  Vector2 gradient(const Vector2& p) const {
    const ComplexVector<Scalar> terms = weights_.conjugate().cwiseProduct(phases(p));
    const Complex s = terms.sum();
    const Eigen::Matrix<Complex, 2, 1> ds = Complex(0, wavenumber_) * (directions_.transpose() * terms);
    const Vector2 dq = 2 * (std::conj(s) * ds).real();
    return 2 * std::norm(s) * dq;
  }

  Matrix2 hessian(const Vector2& p) const {
    const ComplexVector<Scalar> terms = weights_.conjugate().cwiseProduct(phases(p));
    const Complex s = terms.sum();
    const Eigen::Matrix<Complex, 2, 1> ds = Complex(0, wavenumber_) * (directions_.transpose() * terms);
    const Eigen::Matrix<Complex, 2, 2> d2s =
        -wavenumber_ * wavenumber_ * (directions_.transpose() * terms.asDiagonal() * directions_);
    const Scalar q = std::norm(s);
    const Vector2 dq = 2 * (std::conj(s) * ds).real();
    const Matrix2 d2q = 2 * (std::conj(s) * d2s).real() + 2 * (ds * ds.adjoint()).real();
    return 2 * dq * dq.transpose() + 2 * q * d2q;
  }

  /// psi = kappa^2 sqrt(S_xx^2 + 2 S_xy^2 + S_yy^2), the Hessian Frobenius
  /// norm with every cosine replaced by one. The mixed term takes |alpha beta|
  /// so the result bounds ||Hessian||_F everywhere.
  Scalar curvature_bound() const {
    const Eigen::Index n = num_paths();
    std::vector<Scalar> w, ex, ey;
    w.reserve(static_cast<std::size_t>(n * n));
    ex.reserve(w.capacity());
    ey.reserve(w.capacity());
    for (Eigen::Index i1 = 0; i1 < n; ++i1) {
      for (Eigen::Index i2 = 0; i2 < n; ++i2) {
        const Scalar m = std::abs(weights_[i1]) * std::abs(weights_[i2]);
        if (m == 0) continue;
        w.push_back(m);
        ex.push_back(directions_(i2, 0) - directions_(i1, 0));
        ey.push_back(directions_(i2, 1) - directions_(i1, 1));
      }
    }
    Scalar sxx = 0, sxy = 0, syy = 0;
    for (std::size_t a = 0; a < w.size(); ++a) {
      for (std::size_t b = 0; b < w.size(); ++b) {
        const Scalar m = w[a] * w[b];
        const Scalar alpha = ex[a] + ex[b];
        const Scalar beta = ey[a] + ey[b];
        sxx += m * alpha * alpha;
        sxy += m * std::abs(alpha * beta);
        syy += m * beta * beta;
      }
    }
    return wavenumber_ * wavenumber_ * std::sqrt(sxx * sxx + 2 * sxy * sxy + syy * syy);
  }

  /// Second-order minorant around `anchor` with curvature `psi`.
  Scalar lower_bound(const Vector2& anchor, Scalar psi, const Vector2& p) const {
    const Vector2 step = p - anchor;
    return value(anchor) + gradient(anchor).dot(step) - psi / 2 * step.squaredNorm();
  }

 private:
  ComplexVector<Scalar> phases(const Vector2& p) const {
    return field_response(directions_, p, wavelength_);
  }

  ComplexVector<Scalar> weights_;
  PathDirections<Scalar> directions_;
  Scalar wavelength_;
  Scalar wavenumber_;
};

/// Omega_k as a function of the HAP position, given the device position.
inline QuarticForm<double> hap_objective_form(const ChannelRealization& realization, int wd_index,
                                              const Position& wd_pos) {
  const WdChannel& wd = realization.wds.at(static_cast<std::size_t>(wd_index));
  Eigen::VectorXcd b = wd.path_gains.conjugate().cwiseProduct(receive_field_response(wd_pos, realization, wd_index));
  return {std::move(b), wd.tx_directions, realization.wavelength_m};
}

/// U_k as a function of the device position, given the HAP position.
inline QuarticForm<double> wd_objective_form(const ChannelRealization& realization, int wd_index,
                                             const Position& hap_pos) {
  const WdChannel& wd = realization.wds.at(static_cast<std::size_t>(wd_index));
  Eigen::VectorXcd x = wd.path_gains.cwiseProduct(transmit_field_response(hap_pos, realization, wd_index));
  return {std::move(x), wd.rx_directions, realization.wavelength_m};
}

/// Diagnostic: largest sampled ||Hessian||_F over the square [-half, half]^2,
/// divided by the curvature bound. Values far below one mean the bound is
/// loose and SCA steps are short.
template <typename Scalar>
Scalar curvature_tightness(const QuarticForm<Scalar>& form, Scalar half_width, int samples,
                           std::uint64_t seed) {
  const Scalar bound = form.curvature_bound();
  if (bound == 0) return 0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Scalar> coord(-half_width, half_width);
  Scalar worst = 0;
  for (int i = 0; i < samples; ++i) {
    const typename QuarticForm<Scalar>::Vector2 p(coord(rng), coord(rng));
    worst = std::max(worst, form.hessian(p).norm());
  }
  return worst / bound;
}

}  // namespace mawpcn

#endif  // MAWPCN_FOURTH_POWER_HPP
