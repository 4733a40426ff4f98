#include "mawpcn/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mawpcn {

namespace {

constexpr double kInvE = 1.0 / std::numbers::e;
constexpr double kBranchSeriesCutoff = 1e-6;

// Puiseux expansion about the branch point in p = sqrt(2 e delta).
double branch_series(double delta) {
  const double p = std::sqrt(2 * std::numbers::e * delta);
  return -1 + p * (1 + p * (-1.0 / 3 + p * (11.0 / 72 + p * (-43.0 / 540 + p * (769.0 / 17280)))));
}

double initial_guess(double x) {
  if (x < -0.25) return branch_series(x + kInvE);
  if (x < 3) return std::log1p(x) * (1 - std::log1p(std::log1p(x)) / (2 + std::log1p(x)));
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

double halley(double x, double w) {
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1;
    const double step = f / (ew * wp1 - (w + 2) * f / (2 * wp1));
    w -= step;
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * (1 + std::abs(w))) break;
  }
  return w;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) throw std::domain_error("lambert_w0: NaN argument");
  const double delta = x + kInvE;
  if (delta < -1e-15) throw std::domain_error("lambert_w0: argument below -1/e");
  if (delta <= 0) return -1.0;
  if (x == 0) return 0.0;
  if (std::isinf(x)) return x;
  if (delta < kBranchSeriesCutoff) return branch_series(delta);
  return halley(x, initial_guess(x));
}

double lambert_w0_branch_offset(double delta) {
  if (!(delta >= 0)) throw std::domain_error("lambert_w0_branch_offset: negative offset");
  if (delta < kBranchSeriesCutoff) return branch_series(delta);
  return lambert_w0(delta - kInvE);
}

}  // namespace mawpcn
