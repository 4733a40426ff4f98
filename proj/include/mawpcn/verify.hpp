#ifndef MAWPCN_VERIFY_HPP
#define MAWPCN_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mawpcn/fourth_power.hpp"
#include "mawpcn/params.hpp"
#include "mawpcn/solve_result.hpp"

namespace mawpcn {

struct OracleReport {
  std::string check_name;
  int instances = 0;
  int failures = 0;
  double worst_violation = 0;

  bool passed() const { return failures == 0; }
};

/// log2(1 + sum a b) <= log2 sqrt(1 + sum a^2) + log2 sqrt(1 + sum b^2) on
/// random nonnegative vectors (K up to 10), with equality for a = b.
/// worst_violation is the largest lhs - rhs.
OracleReport check_lemma1(std::uint64_t seed, int n_instances);

/// Exhaustive search of the unsimplified problem with a movement phase
/// between downlink and uplink, on tiny instances (K <= 2, 3 x 3 grid,
/// L <= 4). Fails an instance when a distinct-position tuple beats the best
/// identical-position one by more than 1e-3 relative, or when forcing
/// distinct HAP positions does not lose strictly. worst_violation is the
/// largest relative excess.
OracleReport check_proposition2(std::uint64_t seed, int n_instances);

/// p_k tau3 = zeta P_A |h_k|^2 tau1 within 1e-9 relative for every device.
OracleReport check_energy_causality(const SolveResult& result, const SystemParams& params);

/// Central-difference error (h = 1e-6 lambda) relative to the analytic
/// gradient, floored at 1e-4 kappa (sum |w_i|)^4 so that near-stationary
/// points do not divide by zero.
double gradient_relative_error(const QuarticForm<double>& form, const Eigen::Vector2d& p,
                               const Eigen::Vector2d& gradient);

/// Per instance (reference scenario, both sides of every device): values
/// against the quadruple sum and the channel coefficient, gradients against
/// central differences, Hessians against the quadruple sum, curvature bound
/// domination and lower-bound validity at `points` random positions.
OracleReport check_surrogate_and_gradients(std::uint64_t seed, int n_instances, int points = 1000);

/// Reduced HAP and device selection against unreduced one-hot evaluation of
/// |h_k|^4 on random instances (N <= 49, K <= 5, L <= 10). Indices whose
/// objectives agree within 1e-12 relative count as a match.
OracleReport check_selection(std::uint64_t seed, int n_instances);

/// |W(x) e^W(x) - x| <= 1e-12 max(1, |x|) on n_points of [-1/e, 1e6], and
/// optimal_tau1 within one step of a 1e-5 T grid search for n_points / 10
/// random c in [1e-3, 1e6].
OracleReport check_lambert_w(std::uint64_t seed, int n_points);
OracleReport check_time_allocation(std::uint64_t seed, int n_instances);

/// Every check above at its default size; energy causality is run on
/// continuous-solver outputs.
std::vector<OracleReport> run_verify_suite(std::uint64_t seed, int instances);

void write_report_json(std::ostream& out, const std::vector<OracleReport>& reports);

}  // namespace mawpcn

#endif  // MAWPCN_VERIFY_HPP
