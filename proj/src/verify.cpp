#include "mawpcn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "json.hpp"
#include "mawpcn/continuous_solver.hpp"
#include "mawpcn/discrete_solver.hpp"
#include "mawpcn/lambert_w.hpp"
#include "mawpcn/oracles.hpp"
#include "mawpcn/time_allocation.hpp"

namespace mawpcn {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

Position random_position(Rng& rng, const SystemParams& params) {
  const double half = params.region_size_m / 2;
  return {uniform(rng, -half, half), uniform(rng, -half, half)};
}

ChannelRealization random_realization(Rng& rng, const SystemParams& params) {
  const auto locations = sample_wd_locations(rng(), params.num_wds);
  return generate_realization(rng(), params, locations);
}

void tally(OracleReport& report, bool failed, double violation) {
  ++report.instances;
  if (failed) ++report.failures;
  if (std::isnan(violation) || violation > report.worst_violation) report.worst_violation = violation;
}

// Largest error-to-tolerance ratio over every check of one form.
double audit_form(const QuarticForm<double>& form, const std::vector<Position>& points,
                  const std::vector<double>& direct_values, int quadruple_points, Rng& rng,
                  const SystemParams& params) {
  const double kappa = form.wavenumber();
  const double scale = std::pow(form.weights().cwiseAbs().sum(), 4);
  if (scale == 0) return 0;
  const double psi = form.curvature_bound();
  const Eigen::MatrixXcd gram = form.gram();
  double worst = 0;
  auto note = [&](double error, double tolerance) { worst = std::max(worst, error / tolerance); };

  for (std::size_t i = 0; i < points.size(); ++i) {
    const Position& p = points[i];
    const double value = form.value(p);
    const Eigen::Vector2d grad = form.gradient(p);
    const Eigen::Matrix2d hess = form.hessian(p);

    note(std::abs(value - direct_values[i]), 1e-9 * scale);
    note(gradient_relative_error(form, p, grad), 1e-5);
    note(std::abs(hess(0, 1) - hess(1, 0)), 1e-12 * kappa * kappa * scale);
    note(hess.norm(), psi > 0 ? psi : std::numeric_limits<double>::min());

    const Position anchor = random_position(rng, params);
    note(std::abs(form.lower_bound(anchor, psi, anchor) - form.value(anchor)), 1e-12 * scale);
    note(std::max(0.0, form.lower_bound(anchor, psi, p) - value), 1e-9 * scale);

    if (static_cast<int>(i) < quadruple_points) {
      const auto ref = oracle::quadruple_sum(gram, form.directions(), 2 * std::numbers::pi / kappa, p);
      note(std::abs(value - ref.value), 1e-9 * scale);
      note((grad - ref.gradient).norm(), 1e-9 * kappa * scale);
      note((hess - ref.hessian).norm(), 1e-9 * kappa * kappa * scale);
    }
  }
  return worst;
}

}  // namespace

OracleReport check_lemma1(std::uint64_t seed, int n_instances) {
  OracleReport report{"lemma1", 0, 0, -std::numeric_limits<double>::infinity()};
  Rng rng(seed);
  for (int n = 0; n < n_instances; ++n) {
    const int k = uniform_int(rng, 1, 10);
    const double scale = log_uniform(rng, 1e-3, 1e3);
    std::vector<double> a(static_cast<std::size_t>(k)), b(a.size());
    for (auto& x : a) x = scale * uniform(rng, 0, 1);
    const bool parallel = n % 10 == 0;
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = parallel ? a[i] : scale * uniform(rng, 0, 1);

    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      ab += a[i] * b[i];
      aa += a[i] * a[i];
      bb += b[i] * b[i];
    }
    const double lhs = std::log2(1 + ab);
    const double rhs = 0.5 * std::log2(1 + aa) + 0.5 * std::log2(1 + bb);
    const double gap = lhs - rhs;
    const bool failed = gap > 1e-12 || (parallel && std::abs(gap) > 1e-12);
    tally(report, failed, parallel ? std::abs(gap) : gap);
  }
  return report;
}

OracleReport check_proposition2(std::uint64_t seed, int n_instances) {
  OracleReport report{"proposition2", 0, 0, -std::numeric_limits<double>::infinity()};
  Rng rng(seed);
  for (int n = 0; n < n_instances; ++n) {
    Config config;
    config.K = uniform_int(rng, 1, 2);
    config.L = uniform_int(rng, 1, 4);
    config.A_over_lambda = 1.0;
    config.d_over_lambda = 0.5;
    const SystemParams params = make_params(config);
    const ChannelRealization realization = random_realization(rng, params);
    const CandidateGrid grid = build_grid(params);
    const int count = grid.count();
    const int num_wds = params.num_wds;

    auto steps = [&](int a, int b) {
      return std::abs(a % grid.per_axis - b % grid.per_axis) + std::abs(a / grid.per_axis - b / grid.per_axis);
    };
    int max_steps = 0;
    for (int a = 0; a < count; ++a)
      for (int b = 0; b < count; ++b) max_steps = std::max(max_steps, steps(a, b));

    // gain[k][m * count + t] = |h_k|^2 with the HAP at m and device k at t.
    std::vector<std::vector<double>> gain(static_cast<std::size_t>(num_wds),
                                          std::vector<double>(static_cast<std::size_t>(count * count)));
    for (int k = 0; k < num_wds; ++k)
      for (int m = 0; m < count; ++m)
        for (int t = 0; t < count; ++t)
          gain[k][m * count + t] = std::norm(channel_coefficient(grid.at(m), grid.at(t), realization, k));

    // best[D] over all tuples whose longest movement is at most D steps; the
    // same restricted to s1 != s2 in forced[D].
    const double coeff = params.energy_efficiency * params.hap_power_w / params.noise_power_w;
    std::vector<double> best(static_cast<std::size_t>(max_steps + 1), 0.0), forced(best.size(), -1.0);
    for (int s1 = 0; s1 < count; ++s1) {
      for (int s2 = 0; s2 < count; ++s2) {
        for (int budget = steps(s1, s2); budget <= max_steps; ++budget) {
          double total = 0;
          for (int k = 0; k < num_wds; ++k) {
            double device_best = 0;
            for (int t1 = 0; t1 < count; ++t1)
              for (int t2 = 0; t2 < count; ++t2)
                if (steps(t1, t2) <= budget)
                  device_best = std::max(device_best, gain[k][s1 * count + t1] * gain[k][s2 * count + t2]);
            total += device_best;
          }
          const double c = coeff * total;
          best[budget] = std::max(best[budget], c);
          if (s1 != s2) forced[budget] = std::max(forced[budget], c);
        }
      }
    }

    const double grid_step = 1e-4 * params.total_time_s;
    const double identical = oracle::grid_search_tau1(best[0], params.total_time_s, grid_step).value;
    double overall = identical, forced_best = -1;
    for (int d = 1; d <= max_steps; ++d) {
      const double horizon = params.total_time_s - d * params.step_time_s;
      if (horizon <= 0) continue;
      overall = std::max(overall, oracle::grid_search_tau1(best[d], horizon, grid_step).value);
      if (forced[d] >= 0)
        forced_best = std::max(forced_best, oracle::grid_search_tau1(forced[d], horizon, grid_step).value);
    }
    const double excess = identical > 0 ? (overall - identical) / identical : overall;
    const bool forced_loses = count == 1 || forced_best < identical;
    tally(report, excess > 1e-3 || !forced_loses, excess);
  }
  return report;
}

OracleReport check_energy_causality(const SolveResult& result, const SystemParams& params) {
  OracleReport report{"energy_causality", 1, 0, 0};
  for (std::size_t k = 0; k < result.power_w.size(); ++k) {
    const double used = result.power_w[k] * result.tau3_s;
    const double harvested =
        params.energy_efficiency * params.hap_power_w * result.channel_gain_sq.at(k) * result.tau1_s;
    const double violation = harvested > 0 ? std::abs(used - harvested) / harvested
                                           : (used == 0 ? 0 : std::numeric_limits<double>::infinity());
    report.worst_violation = std::max(report.worst_violation, violation);
  }
  if (report.worst_violation > 1e-9) report.failures = 1;
  return report;
}

double gradient_relative_error(const QuarticForm<double>& form, const Eigen::Vector2d& p,
                               const Eigen::Vector2d& gradient) {
  const double wavelength = 2 * std::numbers::pi / form.wavenumber();
  const Eigen::Vector2d fd = oracle::central_difference(
      [&](const Eigen::Vector2d& x) { return form.value(x); }, p, 1e-6 * wavelength);
  const double floor = 1e-4 * form.wavenumber() * std::pow(form.weights().cwiseAbs().sum(), 4);
  const double denom = std::max(gradient.norm(), floor);
  if (denom == 0) return (fd - gradient).norm() == 0 ? 0 : std::numeric_limits<double>::infinity();
  return (fd - gradient).norm() / denom;
}

OracleReport check_surrogate_and_gradients(std::uint64_t seed, int n_instances, int points) {
  OracleReport report{"surrogate_and_gradients", 0, 0, 0};
  Rng rng(seed);
  const SystemParams params = default_params();
  constexpr int kQuadruplePoints = 10;
  for (int n = 0; n < n_instances; ++n) {
    const ChannelRealization realization = random_realization(rng, params);
    double worst = 0;
    for (int k = 0; k < realization.num_wds(); ++k) {
      const Position wd_pos = random_position(rng, params);
      const Position hap_pos = random_position(rng, params);
      std::vector<Position> pts(static_cast<std::size_t>(points));
      for (auto& p : pts) p = random_position(rng, params);

      std::vector<double> direct(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i)
        direct[i] = std::pow(std::norm(channel_coefficient(pts[i], wd_pos, realization, k)), 2);
      worst = std::max(worst, audit_form(hap_objective_form(realization, k, wd_pos), pts, direct,
                                         kQuadruplePoints, rng, params));

      for (std::size_t i = 0; i < pts.size(); ++i)
        direct[i] = std::pow(std::norm(channel_coefficient(hap_pos, pts[i], realization, k)), 2);
      worst = std::max(worst, audit_form(wd_objective_form(realization, k, hap_pos), pts, direct,
                                         kQuadruplePoints, rng, params));
    }
    tally(report, !(worst <= 1), worst);
  }
  return report;
}

OracleReport check_selection(std::uint64_t seed, int n_instances) {
  OracleReport report{"selection", 0, 0, 0};
  Rng rng(seed);
  for (int n = 0; n < n_instances; ++n) {
    Config config;
    config.K = uniform_int(rng, 1, 5);
    config.L = uniform_int(rng, 1, 10);
    config.A_over_lambda = uniform(rng, 1, 5);
    config.d_over_lambda = config.A_over_lambda / uniform_int(rng, 1, 6);
    const SystemParams params = make_params(config);
    const ChannelRealization realization = random_realization(rng, params);
    const CandidateGrid grid = build_grid(params);
    const SteeringTables tables = build_steering_tables(grid, realization);

    DiscreteSolveState state;
    state.hap_index = uniform_int(rng, 0, grid.count() - 1);
    for (int k = 0; k < params.num_wds; ++k) state.wd_index.push_back(uniform_int(rng, 0, grid.count() - 1));
    state.tau1_s = uniform(rng, 0.01, 0.99) * params.total_time_s;
    const double mu = rate_weight(state.tau1_s, params);

    auto mismatch = [](const std::vector<double>& scores, int chosen) {
      const auto top = std::max_element(scores.begin(), scores.end());
      const int expected = static_cast<int>(top - scores.begin());
      if (chosen == expected) return 0.0;
      const double gap = (*top - scores[static_cast<std::size_t>(chosen)]) / std::max(*top, 1e-300);
      return gap <= 1e-12 ? 0.0 : gap;
    };

    std::vector<double> scores(static_cast<std::size_t>(grid.count()));
    for (int m = 0; m < grid.count(); ++m) {
      double s = 0;
      for (int k = 0; k < params.num_wds; ++k)
        s += mu * std::pow(std::norm(channel_coefficient(grid.at(m), grid.at(state.wd_index[k]), realization, k)), 2);
      scores[static_cast<std::size_t>(m)] = s;
    }
    double worst = mismatch(scores, select_hap_index(state, tables, realization, params));

    for (int k = 0; k < params.num_wds; ++k) {
      for (int t = 0; t < grid.count(); ++t)
        scores[static_cast<std::size_t>(t)] =
            std::pow(std::norm(channel_coefficient(grid.at(state.hap_index), grid.at(t), realization, k)), 2);
      worst = std::max(worst, mismatch(scores, select_wd_index(state, k, tables, realization)));
    }
    tally(report, worst > 0, worst);
  }
  return report;
}

OracleReport check_lambert_w(std::uint64_t seed, int n_points) {
  OracleReport report{"lambert_w", 0, 0, 0};
  Rng rng(seed);
  const double branch = -std::exp(-1.0);
  for (int n = 0; n < n_points; ++n) {
    double x;
    switch (n % 4) {
      case 0: x = branch + log_uniform(rng, 1e-16, 1e-2); break;
      case 1: x = uniform(rng, branch, 0); break;
      case 2: x = log_uniform(rng, 1e-8, 1e6); break;
      default: x = uniform(rng, 0, 10); break;
    }
    if (n == 0) x = branch;
    if (n == 1) x = 1e6;
    if (n == 2) x = 0;
    const double w = lambert_w0(x);
    const double residual = std::abs(w * std::exp(w) - x) / std::max(1.0, std::abs(x));
    tally(report, !(residual <= 1e-12), residual / 1e-12);
  }
  return report;
}

OracleReport check_time_allocation(std::uint64_t seed, int n_instances) {
  OracleReport report{"time_allocation", 0, 0, 0};
  Rng rng(seed);
  for (int n = 0; n < n_instances; ++n) {
    const double c = log_uniform(rng, 1e-3, 1e6);
    const double total = uniform(rng, 0.5, 5);
    const double step = 1e-5 * total;
    const double closed = optimal_tau1(c, total);
    const auto grid = oracle::grid_search_tau1(c, total, step);
    const double offset = std::abs(closed - grid.tau1) / step;
    tally(report, !(offset <= 1), offset);
  }
  return report;
}

std::vector<OracleReport> run_verify_suite(std::uint64_t seed, int instances) {
  std::vector<OracleReport> reports;
  reports.push_back(check_lemma1(split_seed(seed, 0), 1000 * instances));
  reports.push_back(check_proposition2(split_seed(seed, 1), instances));
  reports.push_back(check_surrogate_and_gradients(split_seed(seed, 2), instances, 1000));
  reports.push_back(check_selection(split_seed(seed, 3), 10 * instances));
  reports.push_back(check_lambert_w(split_seed(seed, 4), 100 * instances));
  reports.push_back(check_time_allocation(split_seed(seed, 5), 10 * instances));

  OracleReport energy{"energy_causality", 0, 0, 0};
  Rng rng(split_seed(seed, 6));
  const SystemParams params = default_params();
  for (int n = 0; n < instances; ++n) {
    const auto one = check_energy_causality(solve_continuous(random_realization(rng, params), params), params);
    tally(energy, !one.passed(), one.worst_violation);
  }
  reports.push_back(energy);
  return reports;
}

void write_report_json(std::ostream& out, const std::vector<OracleReport>& reports) {
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  for (const auto& r : reports) {
    all = all && r.passed();
    checks.push_back({{"check_name", r.check_name},
                      {"instances", r.instances},
                      {"failures", r.failures},
                      {"worst_violation", r.worst_violation},
                      {"passed", r.passed()}});
  }
  out << nlohmann::json{{"passed", all}, {"checks", checks}}.dump(2) << '\n';
}

}  // namespace mawpcn
