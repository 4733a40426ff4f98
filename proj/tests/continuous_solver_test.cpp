#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "mawpcn/baselines.hpp"
#include "mawpcn/continuous_solver.hpp"
#include "mawpcn/fourth_power.hpp"
#include "mawpcn/time_allocation.hpp"
#include "mawpcn/verify.hpp"
#include "support.hpp"

namespace mawpcn {
namespace {

ContinuousSolveState random_state(std::mt19937_64& rng, const SystemParams& p) {
  std::uniform_real_distribution<double> coord(-p.region_size_m / 2, p.region_size_m / 2);
  ContinuousSolveState s;
  s.hap_pos = {coord(rng), coord(rng)};
  for (int k = 0; k < p.num_wds; ++k) s.wd_pos.emplace_back(coord(rng), coord(rng));
  s.tau1_s = std::uniform_real_distribution<double>(0.1, 0.9)(rng) * p.total_time_s;
  return s;
}

// Largest surrogate value on a 201 x 201 grid over the region.
template <typename Surrogate>
double grid_max(const Surrogate& surrogate, const SystemParams& p) {
  double best = -std::numeric_limits<double>::infinity();
  const double half = p.region_size_m / 2;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j)
      best = std::max(best, surrogate(Position(-half + p.region_size_m * i / 200, -half + p.region_size_m * j / 200)));
  return best;
}

TEST(ScaStep, ZeroGradientKeepsPosition) {
  const SystemParams p = testing::params_with(2, 1);
  const auto r = testing::single_path(2, {1e-3, 2e-3});
  ContinuousSolveState s;
  s.hap_pos = {0.01, -0.02};
  s.wd_pos = {{0.03, 0.0}, {-0.1, 0.1}};
  s.tau1_s = 1.0;
  EXPECT_EQ(sca_step_hap(s, r, p), s.hap_pos);
  EXPECT_EQ(sca_step_wd(s, 1, r, p), s.wd_pos[1]);
}

TEST(ScaStep, HapStepMaximisesSurrogateOverRegion) {
  const SystemParams p = testing::params_with(3, 4);
  std::mt19937_64 rng(31);
  int interior = 0, clamped = 0;
  for (int trial = 0; trial < 60 && (interior < 2 || clamped < 2); ++trial) {
    const auto r = testing::realization_for(100 + trial, p);
    ContinuousSolveState s = random_state(rng, p);
    const double mu = rate_weight(s.tau1_s, p);
    std::vector<QuarticForm<double>> forms;
    std::vector<double> psi;
    for (int k = 0; k < p.num_wds; ++k) {
      forms.push_back(hap_objective_form(r, k, s.wd_pos[static_cast<std::size_t>(k)]));
      psi.push_back(forms.back().curvature_bound());
    }
    auto surrogate = [&](const Position& x) {
      double v = 0;
      for (std::size_t k = 0; k < forms.size(); ++k) v += mu * forms[k].lower_bound(s.hap_pos, psi[k], x);
      return v;
    };
    // From a corner the step is often pushed back onto the boundary.
    if (trial % 2 == 1) s.hap_pos = {p.region_size_m / 2, -p.region_size_m / 2};
    const Position next = sca_step_hap(s, r, p);
    const double half = p.region_size_m / 2;
    const bool on_edge = std::abs(std::abs(next.x()) - half) < 1e-15 || std::abs(std::abs(next.y()) - half) < 1e-15;
    (on_edge ? clamped : interior)++;
    const double reached = surrogate(next);
    const double best = grid_max(surrogate, p);
    EXPECT_GE(reached, best - 1e-12 * std::abs(best)) << "trial " << trial;
  }
  EXPECT_GE(interior, 1);
  EXPECT_GE(clamped, 1);
}

TEST(ScaStep, DeviceStepIsClosedFormInsideAndBestOnBoundary) {
  const SystemParams p = default_params();
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = testing::realization_for(200 + trial, p);
    ContinuousSolveState s = random_state(rng, p);
    const int k = trial % p.num_wds;
    const auto form = wd_objective_form(r, k, s.hap_pos);
    const double delta = form.curvature_bound();
    const Position u = s.wd_pos[static_cast<std::size_t>(k)];
    const Position closed = u + form.gradient(u) / delta;
    const Position next = sca_step_wd(s, k, r, p);
    if ((closed.array().abs() <= p.region_size_m / 2).all()) {
      EXPECT_EQ(next, closed);
    } else {
      auto surrogate = [&](const Position& x) { return form.lower_bound(u, delta, x); };
      EXPECT_GE(surrogate(next), grid_max(surrogate, p) - 1e-12 * std::abs(surrogate(next)));
    }
  }
}

TEST(RateWeight, RejectsFullHarvest) {
  const SystemParams p = default_params();
  EXPECT_THROW(rate_weight(p.total_time_s, p), std::domain_error);
  EXPECT_EQ(rate_weight(0.0, p), 0.0);
}

TEST(SolveContinuous, SingleUserSinglePathNeedsOneIteration) {
  const SystemParams p = testing::params_with(1, 1);
  const auto r = testing::single_path(1, {2e-4, -1e-4});
  const SolveResult res = solve_continuous(r, p);
  EXPECT_EQ(res.hap_pos, Position::Zero());
  EXPECT_EQ(res.wd_pos[0], Position::Zero());
  const double c = snr_constant(std::vector<double>{std::norm(std::complex<double>(2e-4, -1e-4))}, p);
  EXPECT_NEAR(res.tau1_s, optimal_tau1(c, p.total_time_s), 1e-12);
  EXPECT_TRUE(res.converged);
  ASSERT_GE(res.objective_trace.size(), 2u);
  EXPECT_NEAR(res.objective_trace[1], res.sum_throughput_bits_per_hz, 1e-12 * res.sum_throughput_bits_per_hz);
}

TEST(SolveContinuous, TraceMonotoneInsideRegionAndBeatsFixedAntennas) {
  const SystemParams p = default_params();
  for (int n = 0; n < 100; ++n) {
    const auto r = testing::realization_for(300 + n, p);
    const SolveResult res = solve_continuous(r, p);
    for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
      EXPECT_GE(res.objective_trace[i], res.objective_trace[i - 1] * (1 - 1e-9)) << "instance " << n;
    for (const auto& rec : res.records) EXPECT_LE(rec.hap_pos.cwiseAbs().maxCoeff(), p.region_size_m / 2);
    for (const auto& u : res.wd_pos) EXPECT_LE(u.cwiseAbs().maxCoeff(), p.region_size_m / 2);
    EXPECT_GE(res.tau1_s, 0);
    EXPECT_LE(res.tau1_s, p.total_time_s);
    EXPECT_GE(res.sum_throughput_bits_per_hz, fpa_no_compensation(r, p).sum_throughput * (1 - 1e-12));
    EXPECT_TRUE(check_energy_causality(res, p).passed());
  }
}

TEST(SolveContinuous, NonConvergenceIsFlaggedNotThrown) {
  const SystemParams p = default_params();
  SolverOptions o;
  o.max_iters = 1;
  o.epsilon = 0;
  const SolveResult res = solve_continuous(testing::realization_for(5, p), p, o);
  EXPECT_EQ(res.iterations, 1);
  EXPECT_FALSE(res.converged);
}

TEST(SolveContinuous, RejectsMalformedOptions) {
  const SystemParams p = default_params();
  const auto r = testing::realization_for(6, p);
  SolverOptions o;
  o.movable = {true, false};
  EXPECT_THROW(solve_continuous(r, p, o), std::invalid_argument);
  o = {};
  o.initial_tau1 = p.total_time_s;
  EXPECT_THROW(solve_continuous(r, p, o), std::invalid_argument);
  o = {};
  o.initial_wds = std::vector<Position>(2, Position::Zero());
  EXPECT_THROW(solve_continuous(r, p, o), std::invalid_argument);
}

TEST(SolveContinuous, RestartsNeverLoseToSingleStart) {
  const SystemParams p = default_params();
  const auto r = testing::realization_for(7, p);
  SolverOptions o;
  o.restarts = 3;
  o.restart_seed = 9;
  EXPECT_GE(solve_continuous(r, p, o).sum_throughput_bits_per_hz, solve_continuous(r, p).sum_throughput_bits_per_hz);
}

TEST(SolveContinuous, TraceCsvHeaderAndRows) {
  const SystemParams p = default_params();
  const SolveResult res = solve_continuous(testing::realization_for(8, p), p);
  std::ostringstream out;
  write_trace_csv(out, res);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "iter,objective,tau1,hap_x,hap_y");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, static_cast<int>(res.records.size()));
}

TEST(PerUserRates, SingleUserEqualsSum) {
  const SystemParams p = testing::params_with(1, 10);
  const SolveResult res = solve_continuous(testing::realization_for(9, p), p);
  const std::vector<int> order{0};
  const auto rates = per_user_rates(res, order, p);
  ASSERT_EQ(rates.size(), 1u);
  EXPECT_NEAR(rates[0], res.sum_throughput_bits_per_hz, 1e-9);
}

TEST(PerUserRates, OrderChangesSplitButNotSum) {
  const SystemParams p = testing::params_with(3, 10);
  const SolveResult res = solve_continuous(testing::realization_for(10, p), p);
  const std::vector<int> forward{0, 1, 2}, backward{2, 1, 0};
  const auto a = per_user_rates(res, forward, p);
  const auto b = per_user_rates(res, backward, p);
  double sa = 0, sb = 0;
  for (int k = 0; k < 3; ++k) {
    sa += a[static_cast<std::size_t>(k)];
    sb += b[static_cast<std::size_t>(k)];
  }
  EXPECT_NEAR(sa, res.sum_throughput_bits_per_hz, 1e-9);
  EXPECT_NEAR(sb, res.sum_throughput_bits_per_hz, 1e-9);
  EXPECT_GT(std::abs(a[0] - b[0]), 1e-6);
}

TEST(PerUserRates, ZeroPowerGivesZeroRatesAndBadOrderThrows) {
  const SystemParams p = testing::params_with(2, 4);
  const auto r = testing::realization_for(11, p);
  const std::vector<Position> origin(2, Position::Zero());
  const SolveResult res = make_result(r, p, Position::Zero(), origin, 0.0);
  const std::vector<int> order{1, 0};
  for (double rate : per_user_rates(res, order, p)) EXPECT_EQ(rate, 0.0);
  const std::vector<int> repeated{0, 0};
  EXPECT_THROW(per_user_rates(res, repeated, p), std::invalid_argument);
  const std::vector<int> short_order{0};
  EXPECT_THROW(per_user_rates(res, short_order, p), std::invalid_argument);
}

TEST(EnergyCausality, PerturbationIsDetected) {
  const SystemParams p = default_params();
  SolveResult res = solve_continuous(testing::realization_for(12, p), p);
  ASSERT_TRUE(check_energy_causality(res, p).passed());
  res.power_w[0] *= 1 + 1e-6;
  EXPECT_FALSE(check_energy_causality(res, p).passed());

  const std::vector<Position> origin(static_cast<std::size_t>(p.num_wds), Position::Zero());
  const SolveResult idle = make_result(testing::realization_for(12, p), p, Position::Zero(), origin, 0.0);
  for (double pw : idle.power_w) EXPECT_EQ(pw, 0.0);
  EXPECT_TRUE(check_energy_causality(idle, p).passed());
}

}  // namespace
}  // namespace mawpcn
