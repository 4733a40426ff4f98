#include "mawpcn/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iterator>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace mawpcn {

namespace {

constexpr SweepVariable kSweepVariables[] = {SweepVariable::p_dbm,         SweepVariable::T_s,
                                             SweepVariable::K,             SweepVariable::A_over_lambda,
                                             SweepVariable::d_over_lambda, SweepVariable::v_mps};

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

bool wants(const std::vector<Scheme>& schemes, Scheme s) {
  return std::find(schemes.begin(), schemes.end(), s) != schemes.end();
}

}  // namespace

std::string_view sweep_tag(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::p_dbm: return "p_dbm";
    case SweepVariable::T_s: return "T_s";
    case SweepVariable::K: return "K";
    case SweepVariable::A_over_lambda: return "A_over_lambda";
    case SweepVariable::d_over_lambda: return "d_over_lambda";
    case SweepVariable::v_mps: return "v_mps";
  }
  return "?";
}

SweepVariable parse_sweep_variable(std::string_view tag) {
  for (SweepVariable v : kSweepVariables)
    if (sweep_tag(v) == tag) return v;
  throw std::invalid_argument("sweep_var: unknown variable '" + std::string(tag) + "'");
}

Config apply_sweep(Config config, SweepVariable variable, double value) {
  switch (variable) {
    case SweepVariable::p_dbm: config.p_hap_dbm = value; break;
    case SweepVariable::T_s: config.T_s = value; break;
    case SweepVariable::K:
      if (value != std::floor(value)) throw std::invalid_argument("sweep_values: K must be integral");
      config.K = static_cast<int>(value);
      break;
    case SweepVariable::A_over_lambda: config.A_over_lambda = value; break;
    case SweepVariable::d_over_lambda: config.d_over_lambda = value; break;
    case SweepVariable::v_mps: config.v_mps = value; break;
  }
  return config;
}

void ExperimentSpec::validate() const {
  if (sweep_values.empty()) throw std::invalid_argument("sweep_values: must not be empty");
  if (n_trials < 1) throw std::invalid_argument("n_trials: must be >= 1");
  if (schemes.empty()) throw std::invalid_argument("schemes: must not be empty");
  if (random_samples < 1) throw std::invalid_argument("random_samples: must be >= 1");
  for (double v : sweep_values) make_params(apply_sweep(base, sweep_variable, v));
}

SolveResult solve_continuous_two_start(const ChannelRealization& realization, const SystemParams& params,
                                       const SolveResult& discrete, const SolverOptions& options) {
  SolveResult best = solve_continuous(realization, params, options);
  SolverOptions warm = options;
  warm.initial_hap = discrete.hap_pos;
  warm.initial_wds = discrete.wd_pos;
  warm.initial_tau1 = discrete.tau1_s;
  SolveResult refined = solve_continuous(realization, params, warm);
  if (refined.sum_throughput_bits_per_hz > best.sum_throughput_bits_per_hz) best = std::move(refined);
  return best;
}

SolveResult partially_ma_two_start(const ChannelRealization& realization, const SystemParams& params,
                                   const std::vector<bool>& movable, const SolveResult& discrete,
                                   const SolverOptions& options) {
  SolveResult best = partially_ma(realization, params, movable, options);
  SolverOptions warm = options;
  warm.initial_hap = movable.at(0) ? discrete.hap_pos : Position::Zero();
  std::vector<Position> wds(discrete.wd_pos.size(), Position::Zero());
  for (std::size_t k = 0; k < wds.size(); ++k)
    if (movable.at(k + 1)) wds[k] = discrete.wd_pos[k];
  warm.initial_wds = std::move(wds);
  SolveResult refined = partially_ma(realization, params, movable, warm);
  if (refined.sum_throughput_bits_per_hz > best.sum_throughput_bits_per_hz) best = std::move(refined);
  return best;
}

std::vector<ResultRow> run_trial(const Config& config, SweepVariable variable, double sweep_value, int trial,
                                 std::uint64_t master_seed, const std::vector<Scheme>& schemes,
                                 int random_samples) {
  const SystemParams params = make_params(apply_sweep(config, variable, sweep_value));
  const std::uint64_t trial_seed = split_seed(master_seed, static_cast<std::uint64_t>(trial));
  const auto locations = sample_wd_locations(split_seed(trial_seed, 0), params.num_wds);
  const ChannelRealization realization = generate_realization(split_seed(trial_seed, 1), params, locations);
  const CandidateGrid grid = build_grid(params);

  const bool need_cont = wants(schemes, Scheme::continuous) || wants(schemes, Scheme::fpa_comp);
  const bool need_disc = need_cont || wants(schemes, Scheme::discrete) || wants(schemes, Scheme::partial);

  SolveResult discrete;
  if (need_disc) discrete = solve_discrete(realization, params, grid);
  SolveResult continuous;
  if (need_cont) continuous = solve_continuous_two_start(realization, params, discrete);

  std::vector<ResultRow> rows;
  auto add = [&](const BaselineResult& b) {
    rows.push_back({variable, sweep_value, trial, b.scheme, b.sum_throughput, b.tau1_s, b.tau0_s,
                    b.hap_energy_j, b.iterations, b.converged});
  };
  for (Scheme s : schemes) {
    switch (s) {
      case Scheme::continuous: add(to_baseline(s, continuous, params)); break;
      case Scheme::discrete: add(to_baseline(s, discrete, params)); break;
      case Scheme::partial: {
        const auto movable = select_movable_antennas(params.num_wds, split_seed(trial_seed, 3));
        add(to_baseline(s, partially_ma_two_start(realization, params, movable, discrete), params));
        break;
      }
      case Scheme::random:
        add(random_ma(realization, params, grid, random_samples, split_seed(trial_seed, 2)));
        break;
      case Scheme::fpa: add(fpa_no_compensation(realization, params)); break;
      case Scheme::fpa_comp: add(fpa_with_compensation(realization, params, continuous)); break;
    }
  }
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  struct Task {
    double value;
    int trial;
  };
  std::vector<Task> tasks;
  for (double v : spec.sweep_values)
    for (int t = 0; t < spec.n_trials; ++t) tasks.push_back({v, t});

  std::vector<std::vector<ResultRow>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = run_trial(spec.base, spec.sweep_variable, tasks[i].value, tasks[i].trial, spec.master_seed,
                               spec.schemes, spec.random_samples);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads) : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<ResultRow> rows;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(rows));
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.sweep_value != b.sweep_value) return a.sweep_value < b.sweep_value;
    if (a.trial != b.trial) return a.trial < b.trial;
    return static_cast<int>(a.scheme) < static_cast<int>(b.scheme);
  });
  return rows;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "sweep_var,sweep_value,trial,scheme,sum_throughput_bps_hz,tau1_s,tau0_s,hap_energy_j,iterations,"
         "converged\n";
  for (const auto& r : rows) {
    out << sweep_tag(r.sweep_variable) << ',' << format_number(r.sweep_value) << ',' << r.trial << ','
        << scheme_tag(r.scheme) << ',' << format_number(r.sum_throughput) << ',' << format_number(r.tau1_s)
        << ',' << format_number(r.tau0_s) << ',' << format_number(r.hap_energy_j) << ',' << r.iterations << ','
        << (r.converged ? 1 : 0) << '\n';
  }
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("summarize: empty table");
  std::map<std::pair<double, int>, std::vector<double>> groups;
  for (const auto& r : rows) groups[{r.sweep_value, static_cast<int>(r.scheme)}].push_back(r.sum_throughput);

  std::vector<SummaryRow> out;
  for (const auto& [key, values] : groups) {
    SummaryRow s;
    s.sweep_value = key.first;
    s.scheme = static_cast<Scheme>(key.second);
    s.count = static_cast<int>(values.size());
    double sum = 0;
    for (double v : values) sum += v;
    s.mean = sum / s.count;
    if (s.count > 1) {
      double ss = 0;
      for (double v : values) ss += (v - s.mean) * (v - s.mean);
      s.stderr_ = std::sqrt(ss / (s.count - 1) / s.count);
    }
    s.ci_low = s.mean - 1.96 * s.stderr_;
    s.ci_high = s.mean + 1.96 * s.stderr_;
    out.push_back(s);
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << "sweep_value,scheme,count,mean,stderr,ci_low,ci_high\n";
  for (const auto& s : summary)
    out << format_number(s.sweep_value) << ',' << scheme_tag(s.scheme) << ',' << s.count << ','
        << format_number(s.mean) << ',' << format_number(s.stderr_) << ',' << format_number(s.ci_low) << ','
        << format_number(s.ci_high) << '\n';
}

ExperimentSpec parse_experiment(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::istringstream config_stream(text);
  ExperimentSpec spec;
  spec.base = parse_config(config_stream);
  spec.n_trials = spec.base.n_trials;
  spec.master_seed = spec.base.master_seed;
  spec.sweep_values = {spec.base.p_hap_dbm};
  spec.schemes = {Scheme::continuous, Scheme::discrete, Scheme::partial,
                  Scheme::random,     Scheme::fpa,      Scheme::fpa_comp};

  const auto j = nlohmann::json::parse(text);
  try {
    if (auto it = j.find("sweep_var"); it != j.end())
      spec.sweep_variable = parse_sweep_variable(it->get<std::string>());
    if (auto it = j.find("sweep_values"); it != j.end()) spec.sweep_values = it->get<std::vector<double>>();
    if (auto it = j.find("schemes"); it != j.end()) {
      spec.schemes.clear();
      for (const auto& tag : it->get<std::vector<std::string>>()) spec.schemes.push_back(parse_scheme(tag));
    }
    if (auto it = j.find("random_samples"); it != j.end()) spec.random_samples = it->get<int>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("experiment: sweep_var, sweep_values, schemes or random_samples has wrong type");
  }
  return spec;
}

ExperimentSpec load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  return parse_experiment(in);
}

}  // namespace mawpcn
