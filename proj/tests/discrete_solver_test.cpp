#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "mawpcn/continuous_solver.hpp"
#include "mawpcn/discrete_solver.hpp"
#include "mawpcn/oracles.hpp"
#include "mawpcn/time_allocation.hpp"
#include "mawpcn/verify.hpp"
#include "support.hpp"

namespace mawpcn {
namespace {

SystemParams tiny_params(int num_wds, int num_paths, double a_over_lambda, double d_over_lambda) {
  Config c;
  c.K = num_wds;
  c.L = num_paths;
  c.A_over_lambda = a_over_lambda;
  c.d_over_lambda = d_over_lambda;
  return make_params(c);
}

TEST(BuildGrid, TwoByTwoCorners) {
  const SystemParams p = tiny_params(1, 1, 1.0, 1.0);
  const CandidateGrid g = build_grid(p);
  ASSERT_EQ(g.count(), 4);
  const double h = p.region_size_m / 2;
  EXPECT_EQ(g.at(0), Position(-h, -h));
  EXPECT_EQ(g.at(1), Position(h, -h));
  EXPECT_EQ(g.at(2), Position(-h, h));
  EXPECT_EQ(g.at(3), Position(h, h));
}

TEST(BuildGrid, ReferenceScenarioHas441DistinctPointsInside) {
  const SystemParams p = default_params();
  const CandidateGrid g = build_grid(p);
  ASSERT_EQ(g.per_axis, 21);
  ASSERT_EQ(g.count(), 441);
  std::set<std::pair<double, double>> seen;
  for (const auto& x : g.positions) {
    EXPECT_LE(x.cwiseAbs().maxCoeff(), p.region_size_m / 2);
    seen.insert({x.x(), x.y()});
  }
  EXPECT_EQ(seen.size(), 441u);
  EXPECT_EQ(g.at(g.nearest_index(Position::Zero())), Position::Zero());
  EXPECT_LT(g.at(1).x() - g.at(0).x() - p.step_size_m, 1e-15);
}

TEST(BuildGrid, NonIntegerRatioStopsInside) {
  const SystemParams p = tiny_params(1, 1, 1.0, 0.3);
  const CandidateGrid g = build_grid(p);
  EXPECT_EQ(g.per_axis, 4);
  for (const auto& x : g.positions) EXPECT_LE(x.cwiseAbs().maxCoeff(), p.region_size_m / 2);
}

TEST(BuildGrid, RejectsPitchAboveRegion) {
  SystemParams p = default_params();
  p.step_size_m = 2 * p.region_size_m;
  EXPECT_THROW(build_grid(p), std::invalid_argument);
}

TEST(Selection, SingletonGridPicksZero) {
  const SystemParams p = testing::params_with(2, 5);
  const auto r = testing::realization_for(1, p);
  CandidateGrid g;
  g.positions = {Position::Zero()};
  g.per_axis = 1;
  DiscreteSolveState s{0, {0, 0}, 1.0, {}};
  EXPECT_EQ(select_hap_index(s, g, r, p), 0);
  EXPECT_EQ(select_wd_index(s, 1, g, r), 0);
}

TEST(Selection, MatchesUnreducedEvaluationOn25Points) {
  const SystemParams p = tiny_params(3, 8, 2.0, 0.5);
  const CandidateGrid g = build_grid(p);
  ASSERT_EQ(g.count(), 25);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 24);
  for (int n = 0; n < 50; ++n) {
    const auto r = testing::realization_for(40 + n, p);
    DiscreteSolveState s{pick(rng), {pick(rng), pick(rng), pick(rng)}, 1.3, {}};
    const double mu = rate_weight(s.tau1_s, p);
    std::vector<double> scores;
    for (int m = 0; m < g.count(); ++m) {
      double v = 0;
      for (int k = 0; k < 3; ++k)
        v += mu * std::pow(std::norm(channel_coefficient(g.at(m), g.at(s.wd_index[k]), r, k)), 2);
      scores.push_back(v);
    }
    EXPECT_EQ(select_hap_index(s, g, r, p), std::max_element(scores.begin(), scores.end()) - scores.begin());

    for (int k = 0; k < 3; ++k) {
      std::vector<double> sq;
      for (int t = 0; t < g.count(); ++t) sq.push_back(std::norm(channel_coefficient(g.at(s.hap_index), g.at(t), r, k)));
      EXPECT_EQ(select_wd_index(s, k, g, r), std::max_element(sq.begin(), sq.end()) - sq.begin());
    }
  }
}

TEST(Selection, PositiveWeightScalingKeepsIndex) {
  const SystemParams p = default_params();
  const auto r = testing::realization_for(3, p);
  const SteeringTables t = build_steering_tables(build_grid(p), r);
  DiscreteSolveState s{100, {3, 50, 220, 400, 7}, 0.5, {}};
  const int a = select_hap_index(s, t, r, p);
  s.tau1_s = 2.5;
  EXPECT_EQ(select_hap_index(s, t, r, p), a);
  s.tau1_s = 0;
  EXPECT_EQ(select_hap_index(s, t, r, p), a);
}

TEST(SolveDiscrete, ConstantObjectivePicksLowestIndex) {
  const SystemParams p = testing::params_with(1, 1);
  const auto r = testing::single_path(1, {3e-4, 0});
  const SolveResult res = solve_discrete(r, p);
  EXPECT_EQ(res.hap_index, 0);
  EXPECT_EQ(res.wd_index[0], 0);
  const double c = snr_constant(std::vector<double>{9e-8}, p);
  EXPECT_NEAR(res.tau1_s, optimal_tau1(c, p.total_time_s), 1e-12);
  EXPECT_TRUE(res.converged);
}

TEST(SolveDiscrete, TraceMonotoneAndRefinementDominates) {
  const SystemParams p = default_params();
  const CandidateGrid g = build_grid(p);
  for (int n = 0; n < 100; ++n) {
    const auto r = testing::realization_for(500 + n, p);
    const SolveResult d = solve_discrete(r, p, g);
    for (std::size_t i = 1; i < d.objective_trace.size(); ++i)
      EXPECT_GE(d.objective_trace[i], d.objective_trace[i - 1] * (1 - 1e-12)) << "instance " << n;
    EXPECT_TRUE(check_energy_causality(d, p).passed());

    SolverOptions warm;
    warm.initial_hap = d.hap_pos;
    warm.initial_wds = d.wd_pos;
    warm.initial_tau1 = d.tau1_s;
    const SolveResult c = solve_continuous(r, p, warm);
    EXPECT_GE(c.sum_throughput_bits_per_hz, d.sum_throughput_bits_per_hz * (1 - 1e-12)) << "instance " << n;
  }
}

TEST(SolveDiscrete, FixedPointIsBlockOptimalAndBoundedByJointMaximum) {
  const SystemParams p = tiny_params(2, 4, 1.0, 0.5);
  const CandidateGrid g = build_grid(p);
  ASSERT_EQ(g.count(), 9);
  int attained = 0;
  for (int n = 0; n < 100; ++n) {
    const auto r = testing::realization_for(700 + n, p);
    auto sum4 = [&](int m, int a, int b) {
      return std::pow(std::norm(channel_coefficient(g.at(m), g.at(a), r, 0)), 2) +
             std::pow(std::norm(channel_coefficient(g.at(m), g.at(b), r, 1)), 2);
    };
    double best_c = 0;
    for (int m = 0; m < 9; ++m)
      for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) best_c = std::max(best_c, sum4(m, a, b));
    best_c *= p.energy_efficiency * p.hap_power_w / p.noise_power_w;
    const double exhaustive = oracle::throughput(best_c, optimal_tau1(best_c, p.total_time_s), p.total_time_s);
    const SolveResult d = solve_discrete(r, p, g);
    const double found = d.sum_throughput_bits_per_hz;
    EXPECT_LE(found, exhaustive * (1 + 1e-12));
    if (found >= exhaustive * (1 - 1e-12)) ++attained;

    // No single-block change improves the fixed point.
    const int m0 = d.hap_index, a0 = d.wd_index[0], b0 = d.wd_index[1];
    const double at = sum4(m0, a0, b0) * (1 + 1e-12);
    for (int i = 0; i < 9; ++i) {
      EXPECT_LE(sum4(i, a0, b0), at) << "instance " << n;
      EXPECT_LE(sum4(m0, i, b0), at) << "instance " << n;
      EXPECT_LE(sum4(m0, a0, i), at) << "instance " << n;
    }
  }
  RecordProperty("joint_maximum_attained", attained);
  std::printf("joint maximum attained in %d/100 instances\n", attained);
}

TEST(SolveDiscrete, FinerNestedGridsDoNotLoseOnAverage) {
  double coarse_sum = 0, mid_sum = 0, fine_sum = 0;
  for (int n = 0; n < 40; ++n) {
    const SystemParams coarse = tiny_params(5, 10, 5.0, 0.5);
    const SystemParams mid = tiny_params(5, 10, 5.0, 0.25);
    const SystemParams fine = tiny_params(5, 10, 5.0, 0.125);
    const auto r = testing::realization_for(900 + n, coarse);
    coarse_sum += solve_discrete(r, coarse).sum_throughput_bits_per_hz;
    mid_sum += solve_discrete(r, mid).sum_throughput_bits_per_hz;
    fine_sum += solve_discrete(r, fine).sum_throughput_bits_per_hz;
  }
  EXPECT_LE(coarse_sum, mid_sum);
  EXPECT_LE(mid_sum, fine_sum);
}

}  // namespace
}  // namespace mawpcn
