#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acdc/config.hpp"
#include "acdc/harness.hpp"
#include "acdc/oracle_normal.hpp"

namespace {

struct GlobalOverrides {
  std::optional<long> seed;
  std::optional<long> replicates;
  std::optional<long> mc_size;
  std::optional<long> jobs;
  std::optional<std::string> out;
  std::optional<double> proportion;
};

acdc::Config load_config(const std::string& path, const GlobalOverrides& ov) {
  acdc::Config cfg = acdc::Config::from_file(path);
  if (ov.seed) cfg.set("seed", std::to_string(*ov.seed));
  if (ov.replicates) cfg.set("replicates", std::to_string(*ov.replicates));
  if (ov.mc_size) cfg.set("sampler.N", std::to_string(*ov.mc_size));
  if (ov.jobs) cfg.set("jobs", std::to_string(*ov.jobs));
  if (ov.out) cfg.set("out", *ov.out);
  if (ov.proportion) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", *ov.proportion);
    cfg.set("kernel.proportion", buf);
  }
  return cfg;
}

int execute_study(const acdc::Config& cfg) {
  const acdc::ExperimentConfig ec = acdc::parse_experiment_config(cfg);
  if (ec.study == "pit") {
    const acdc::PitReport report = acdc::run_pit_study(ec, ec.replicates);
    const std::string csv =
        acdc::emit_report(report, acdc::ReportFormat::kCsv, ec.out_dir);
    const std::string md =
        acdc::emit_report(report, acdc::ReportFormat::kMarkdown, ec.out_dir);
    std::cout << acdc::render_pit_markdown(report);
    std::cout << "\nwrote " << csv << "\nwrote " << md << "\n";
    return report.test.pass ? 0 : 2;
  }
  const acdc::CoverageReport report =
      acdc::run_coverage_study(ec, ec.algorithm == "both");
  const std::string csv =
      acdc::emit_report(report, acdc::ReportFormat::kCsv, ec.out_dir);
  const std::string md =
      acdc::emit_report(report, acdc::ReportFormat::kMarkdown, ec.out_dir);
  std::cout << acdc::render_coverage_markdown(report);
  std::cout << "\nwrote " << csv << "\nwrote " << md << "\n";
  return 0;
}

std::string settings_path(const std::string& configs_dir, const char* file) {
  return configs_dir + "/" + file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acdc — confidence distributions by accept-reject sampling"};
  app.require_subcommand(1);

  GlobalOverrides ov;
  std::string configs_dir = "configs";
  long seed = 0, replicates = 0, mc_size = 0, jobs = 0;
  std::string out_dir;
  app.add_option("--seed", seed, "Base RNG seed override");
  app.add_option("--replicates", replicates, "Replicate count override");
  app.add_option("--mc-size", mc_size, "Monte Carlo sample size N override");
  app.add_option("--out", out_dir, "Output directory override");
  app.add_option("--jobs", jobs, "Worker threads for the replicate pool");
  app.add_option("--configs", configs_dir, "Directory with shipped configs")
      ->capture_default_str();

  auto* run_cmd = app.add_subcommand("run", "Run a single study from a config file");
  run_cmd->fallthrough();
  std::string config_path;
  run_cmd->add_option("config", config_path, "Study config file")
      ->required()
      ->check(CLI::ExistingFile);

  static const char* kCauchyConfigs[5] = {
      "cauchy_median.cfg", "cauchy_mean.cfg", "cauchy_mad.cfg",
      "cauchy_mean_sd.cfg", "cauchy_median_mad.cfg"};
  static const char* kRickerConfigs[5] = {
      "ricker_log_r.cfg", "ricker_log_sigma.cfg", "ricker_log_phi.cfg",
      "ricker_log_r_log_sigma.cfg", "ricker_log_r_log_phi.cfg"};

  auto* cauchy_cmd = app.add_subcommand(
      "coverage-cauchy", "Cauchy coverage study (settings 1-5)");
  cauchy_cmd->fallthrough();
  int cauchy_setting = 1;
  double proportion = 0.0;
  cauchy_cmd->add_option("--setting", cauchy_setting, "Study setting")
      ->check(CLI::Range(1, 5))
      ->capture_default_str();
  auto* prop_opt = cauchy_cmd->add_option(
      "--proportion", proportion, "Acceptance proportion override");
  prop_opt->check(CLI::Range(1e-6, 1.0));

  auto* ricker_cmd = app.add_subcommand(
      "coverage-ricker", "Ricker coverage study (settings 1-5)");
  ricker_cmd->fallthrough();
  int ricker_setting = 1;
  ricker_cmd->add_option("--setting", ricker_setting, "Study setting")
      ->check(CLI::Range(1, 5))
      ->capture_default_str();

  auto* pit_cmd = app.add_subcommand(
      "pit", "PIT uniformity study for a pivotal family");
  pit_cmd->fallthrough();
  std::string pit_model = "normal_location";
  pit_cmd->add_option("--model", pit_model, "Pivotal family")
      ->check(CLI::IsMember({"normal_location", "cauchy_scale"}))
      ->capture_default_str();

  auto* oracle_cmd = app.add_subcommand(
      "oracle-normal", "Closed-form normal-mean diagnostics");
  oracle_cmd->fallthrough();
  int oracle_n = 100;
  double oracle_eps = 0.1, oracle_mu = 0.0, oracle_b = 0.0, oracle_s = 0.0;
  oracle_cmd->add_option("--n", oracle_n, "Sample size")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--epsilon", oracle_eps, "Kernel tolerance at n")
      ->capture_default_str();
  oracle_cmd->add_option("--mu-n", oracle_mu, "r_n mean (default s_obs + 1/b_n)");
  oracle_cmd->add_option("--b-n", oracle_b, "r_n precision scale (default n^{1/4})");
  oracle_cmd->add_option("--s-obs", oracle_s, "Observed summary");
  std::vector<int> oracle_grid;
  oracle_cmd->add_option("--grid", oracle_grid,
                         "n grid for the degeneracy curve (eps scaled as 1/n)");

  CLI11_PARSE(app, argc, argv);

  if (app.count("--seed")) ov.seed = seed;
  if (app.count("--replicates")) ov.replicates = replicates;
  if (app.count("--mc-size")) ov.mc_size = mc_size;
  if (app.count("--jobs")) ov.jobs = jobs;
  if (app.count("--out")) ov.out = out_dir;

  try {
    if (run_cmd->parsed()) return execute_study(load_config(config_path, ov));
    if (cauchy_cmd->parsed()) {
      if (prop_opt->count()) ov.proportion = proportion;
      const std::string path = settings_path(
          configs_dir, kCauchyConfigs[static_cast<std::size_t>(cauchy_setting - 1)]);
      return execute_study(load_config(path, ov));
    }
    if (ricker_cmd->parsed()) {
      const std::string path = settings_path(
          configs_dir, kRickerConfigs[static_cast<std::size_t>(ricker_setting - 1)]);
      return execute_study(load_config(path, ov));
    }
    if (pit_cmd->parsed()) {
      const std::string path =
          settings_path(configs_dir, ("pit_" + pit_model + ".cfg").c_str());
      return execute_study(load_config(path, ov));
    }
    if (oracle_cmd->parsed()) {
      acdc::OracleNormalSpec spec;
      spec.n = oracle_n;
      spec.epsilon = oracle_eps;
      spec.s_obs = oracle_s;
      spec.b_n = oracle_cmd->count("--b-n")
                     ? oracle_b
                     : std::pow(static_cast<double>(oracle_n), 0.25);
      spec.mu_n = oracle_cmd->count("--mu-n") ? oracle_mu
                                              : oracle_s + 1.0 / spec.b_n;
      const acdc::OracleMoments moments = acdc::closed_form_moments(spec);
      std::printf("n=%d mu_n=%.6g b_n=%.6g epsilon=%.6g s_obs=%.6g\n", spec.n,
                  spec.mu_n, spec.b_n, spec.epsilon, spec.s_obs);
      std::printf("mean       %.10g\n", moments.mean);
      std::printf("variance   %.10g\n", moments.variance);
      std::printf("acceptance %.10g\n", acdc::acceptance_rate(spec));

      if (oracle_grid.empty())
        oracle_grid = {100, 178, 316, 562, 1000, 1778, 3162, 5623, 10000, 17783};
      acdc::OracleNormalRules rules;
      rules.s_obs = oracle_s;
      const double n0 = static_cast<double>(oracle_grid.front());
      rules.epsilon = [oracle_eps, n0](int n) {
        return oracle_eps * n0 / static_cast<double>(n);
      };
      const auto curve = acdc::acceptance_rate_curve(rules, oracle_grid);
      std::string text = "n,epsilon,acceptance_rate\n";
      for (const auto& [n, rate] : curve) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g\n", n,
                      rules.epsilon(n), rate);
        text += buf;
      }
      const std::string dir = ov.out.value_or(".");
      std::filesystem::create_directories(dir);
      const std::string path = dir + "/oracle_normal_curve.csv";
      std::ofstream file(path, std::ios::binary);
      if (!file) throw acdc::AcdcError("cannot write '" + path + "'");
      file << text;
      std::cout << text << "wrote " << path << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
