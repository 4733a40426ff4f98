// Command-line front end: Monte-Carlo runs and the oracle suite.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mawpcn/harness.hpp"
#include "mawpcn/verify.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

int run_command(const std::string& config_path, const std::string& out_path, const std::string& summary_path,
                int trials, long long seed, const std::string& schemes, int threads) {
  mawpcn::ExperimentSpec spec = mawpcn::load_experiment(config_path);
  if (trials > 0) spec.n_trials = trials;
  if (seed >= 0) spec.master_seed = static_cast<std::uint64_t>(seed);
  if (!schemes.empty()) {
    spec.schemes.clear();
    for (const auto& tag : split_list(schemes)) spec.schemes.push_back(mawpcn::parse_scheme(tag));
  }
  spec.threads = threads;

  const auto rows = mawpcn::run_experiment(spec);
  if (out_path.empty() || out_path == "-") {
    mawpcn::write_results_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    mawpcn::write_results_csv(out, rows);
  }
  if (!summary_path.empty()) {
    std::ofstream out(summary_path);
    if (!out) throw std::runtime_error("cannot write " + summary_path);
    mawpcn::write_summary_csv(out, mawpcn::summarize(rows));
  }
  return 0;
}

int verify_command(long long seed, int instances, const std::string& report_path) {
  const auto reports = mawpcn::run_verify_suite(static_cast<std::uint64_t>(seed), instances);
  if (report_path.empty() || report_path == "-") {
    mawpcn::write_report_json(std::cout, reports);
  } else {
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error("cannot write " + report_path);
    mawpcn::write_report_json(out, reports);
  }
  for (const auto& r : reports)
    if (!r.passed()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-throughput optimisation for movable-antenna wireless powered networks"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Monte-Carlo sweep; writes one CSV row per value, trial and scheme");
  std::string config_path, out_path, summary_path, schemes;
  int trials = 0, threads = 0;
  long long run_seed = -1;
  run->add_option("--config", config_path, "JSON configuration")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "Results CSV (default stdout)");
  run->add_option("--summary", summary_path, "Per-scheme means and 95% intervals");
  run->add_option("--trials", trials, "Override n_trials")->check(CLI::PositiveNumber);
  run->add_option("--seed", run_seed, "Override master_seed")->check(CLI::NonNegativeNumber);
  run->add_option("--schemes", schemes, "Comma list of cont,disc,partial,random,fpa,fpa_comp");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Run the oracle suite; nonzero exit on any failure");
  long long verify_seed = 1;
  int instances = 100;
  std::string report_path;
  verify->add_option("--seed", verify_seed, "Suite seed")->check(CLI::NonNegativeNumber);
  verify->add_option("--instances", instances, "Instances per check")->check(CLI::PositiveNumber);
  verify->add_option("--report", report_path, "JSON report path (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return run_command(config_path, out_path, summary_path, trials, run_seed, schemes, threads);
    return verify_command(verify_seed, instances, report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
