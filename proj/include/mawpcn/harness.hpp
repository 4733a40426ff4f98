#ifndef MAWPCN_HARNESS_HPP
#define MAWPCN_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mawpcn/baselines.hpp"
#include "mawpcn/params.hpp"

namespace mawpcn {

enum class SweepVariable { p_dbm, T_s, K, A_over_lambda, d_over_lambda, v_mps };

std::string_view sweep_tag(SweepVariable variable);
/// Throws std::invalid_argument on an unknown name.
SweepVariable parse_sweep_variable(std::string_view tag);

/// Copy of config with the swept field set to value.
Config apply_sweep(Config config, SweepVariable variable, double value);

struct ExperimentSpec {
  Config base;
  SweepVariable sweep_variable = SweepVariable::p_dbm;
  std::vector<double> sweep_values;
  int n_trials = 100;
  std::uint64_t master_seed = 1;
  std::vector<Scheme> schemes;
  int random_samples = 500;
  /// Worker threads; 0 means hardware concurrency.
  int threads = 0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct ResultRow {
  SweepVariable sweep_variable = SweepVariable::p_dbm;
  double sweep_value = 0;
  int trial = 0;
  Scheme scheme = Scheme::fpa;
  double sum_throughput = 0;
  double tau1_s = 0;
  double tau0_s = 0;
  double hap_energy_j = 0;
  int iterations = 0;
  bool converged = true;
};

/// Continuous solver run twice, from the reference points and from the
/// discrete solution; the better run is returned.
SolveResult solve_continuous_two_start(const ChannelRealization& realization, const SystemParams& params,
                                       const SolveResult& discrete, const SolverOptions& options = {});

/// Partially movable variant of the above. Fixed antennas stay at the
/// reference point in both runs.
SolveResult partially_ma_two_start(const ChannelRealization& realization, const SystemParams& params,
                                   const std::vector<bool>& movable, const SolveResult& discrete,
                                   const SolverOptions& options = {});

/// All requested schemes on one trial. Seeds: trial seed = split(master,
/// trial); locations, channel, random placement and movable subset use
/// split(trial seed, 0..3), so every sweep value sees the same draws.
std::vector<ResultRow> run_trial(const Config& config, SweepVariable variable, double sweep_value, int trial,
                                 std::uint64_t master_seed, const std::vector<Scheme>& schemes,
                                 int random_samples = 500);

/// Rows sorted by (sweep_value, trial, scheme); independent of thread count.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);

struct SummaryRow {
  double sweep_value = 0;
  Scheme scheme = Scheme::fpa;
  int count = 0;
  double mean = 0;
  double stderr_ = 0;
  double ci_low = 0;
  double ci_high = 0;
};

/// Mean, standard error and normal 95% interval of the sum throughput per
/// (sweep_value, scheme). A single row has zero standard error. Throws
/// std::invalid_argument on an empty table.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);

/// Config keys plus sweep_var, sweep_values, schemes and random_samples.
/// Without sweep keys the sweep is p_dbm at the configured power.
ExperimentSpec parse_experiment(std::istream& in);
ExperimentSpec load_experiment(const std::string& path);

}  // namespace mawpcn

#endif  // MAWPCN_HARNESS_HPP
