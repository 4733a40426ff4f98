#ifndef MAWPCN_ORACLES_HPP
#define MAWPCN_ORACLES_HPP

// Slow reference evaluations used by the verification suite and the tests.
// None of them share code with the production kernels beyond the channel
// model itself.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Dense>

#include "mawpcn/channel.hpp"

namespace mawpcn::oracle {

/// Value, gradient and Hessian of (e^H G e)^2 for a Hermitian G by the
/// explicit four-index sum
///   sum G_{i1 i2} G_{i3 i4} exp(j kappa (a_i2 - a_i1 + a_i4 - a_i3)^T p).
struct QuadrupleSum {
  double value = 0;
  Eigen::Vector2d gradient = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hessian = Eigen::Matrix2d::Zero();
};

inline QuadrupleSum quadruple_sum(const Eigen::MatrixXcd& gram, const PathDirections<double>& directions,
                                  double wavelength, const Eigen::Vector2d& p) {
  const double kappa = 2 * std::numbers::pi / wavelength;
  const Eigen::Index n = gram.rows();
  std::complex<double> v = 0, gx = 0, gy = 0, hxx = 0, hxy = 0, hyy = 0;
  const std::complex<double> j(0, 1);
  for (Eigen::Index i1 = 0; i1 < n; ++i1)
    for (Eigen::Index i2 = 0; i2 < n; ++i2)
      for (Eigen::Index i3 = 0; i3 < n; ++i3)
        for (Eigen::Index i4 = 0; i4 < n; ++i4) {
          const double alpha = directions(i2, 0) - directions(i1, 0) + directions(i4, 0) - directions(i3, 0);
          const double beta = directions(i2, 1) - directions(i1, 1) + directions(i4, 1) - directions(i3, 1);
          const std::complex<double> t =
              gram(i1, i2) * gram(i3, i4) * std::exp(j * kappa * (alpha * p.x() + beta * p.y()));
          v += t;
          gx += j * kappa * alpha * t;
          gy += j * kappa * beta * t;
          hxx -= kappa * kappa * alpha * alpha * t;
          hxy -= kappa * kappa * alpha * beta * t;
          hyy -= kappa * kappa * beta * beta * t;
        }
  QuadrupleSum out;
  out.value = v.real();
  out.gradient = {gx.real(), gy.real()};
  out.hessian << hxx.real(), hxy.real(), hxy.real(), hyy.real();
  return out;
}

/// Central differences with step h.
inline Eigen::Vector2d central_difference(const std::function<double(const Eigen::Vector2d&)>& f,
                                          const Eigen::Vector2d& p, double h) {
  const Eigen::Vector2d ex(h, 0), ey(0, h);
  return {(f(p + ex) - f(p - ex)) / (2 * h), (f(p + ey) - f(p - ey)) / (2 * h)};
}

/// (H - tau1) log2(1 + c tau1 / (H - tau1)) written out independently.
inline double throughput(double c, double tau1, double horizon) {
  const double tau3 = horizon - tau1;
  if (tau1 <= 0 || tau3 <= 0) return 0;
  return tau3 * std::log1p(c * tau1 / tau3) / std::numbers::ln2;
}

/// Best tau1 on the grid {i * step} inside (0, horizon); lowest on ties.
struct GridOptimum {
  double tau1 = 0;
  double value = 0;
};

inline GridOptimum grid_search_tau1(double c, double horizon, double step) {
  GridOptimum best;
  for (long i = 1;; ++i) {
    const double tau1 = static_cast<double>(i) * step;
    if (tau1 >= horizon) break;
    const double v = throughput(c, tau1, horizon);
    if (v > best.value) best = {tau1, v};
  }
  return best;
}

}  // namespace mawpcn::oracle

#endif  // MAWPCN_ORACLES_HPP
