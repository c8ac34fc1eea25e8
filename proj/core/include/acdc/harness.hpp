#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "acdc/config.hpp"
#include "acdc/inference.hpp"
#include "acdc/initial_density.hpp"
#include "acdc/models.hpp"
#include "acdc/rng.hpp"
#include "acdc/samplers.hpp"
#include "acdc/types.hpp"

namespace acdc {

/// Fully resolved description of one study (one table row, or one PIT run).
struct ExperimentConfig {
  // Study-level.
  std::string study = "coverage";  // coverage | pit
  std::string name = "study";
  int replicates = 200;
  std::uint64_t seed = 20240817;
  int jobs = 1;
  std::string out_dir = ".";

  // Model.
  std::string model_name;  // normal | cauchy | ricker
  ParamVector theta0;      // truth in the free coordinates
  int n = 400;             // sample size (T for ricker)
  std::string cauchy_free = "loc";  // loc | scale | both
  double cauchy_loc = 10.0;
  double cauchy_scale = 0.55;
  std::array<bool, 3> ricker_free{true, false, false};
  RickerParams ricker_fixed;
  int ricker_burn_in = 50;

  // Summary.
  std::string summary_name;

  // Sampler.
  std::string algorithm = "both";  // acdc | is_abc | both
  long mc_size = 10000;

  // Kernel.
  std::string kernel_kind = "uniform";
  std::optional<double> proportion = 0.05;
  std::optional<double> epsilon;
  int pilot_size = 500;

  // Initial density r_n.
  std::string rn_kind = "minibatch";  // flat | inv_scale | normal | minibatch
  double rn_nu = 0.5;
  int rn_k = 0;  // 0 -> floor(n / floor(n^nu))
  bool rn_overlap = false;
  std::string rn_estimator = "median";  // median | mad | median_mad | pmc
  std::optional<ParamBounds> rn_box;    // sampling box / PMC prior box
  double rn_mu = 0.0;                   // normal r_n
  double rn_b = 1.0;
  int rn_window = 10;  // series window length (ricker minibatch)
  int pmc_particles = 256;
  int pmc_generations = 3;

  // IS-ABC target prior (flat box; defaults to rn_box).
  std::optional<ParamBounds> prior_box;

  // Post-processing and inference.
  bool adjust_enabled = true;
  double level = 0.95;
  std::string region = "interval";  // interval | depth
  bool pit_log_scale = false;
};

/// Parse + validate a dotted-key Config into an ExperimentConfig.
ExperimentConfig parse_experiment_config(const Config& cfg);

/// Model factory resolving the config's model block.
std::unique_ptr<GenerativeModel> make_model(const ExperimentConfig& config);

/// Outcome of one algorithm arm within a replicate.
struct ArmResult {
  bool ok = false;
  std::string error;
  long accepted = 0;
  long n_diverged = 0;
  double ess = 0.0;
  double epsilon_used = 0.0;
  bool adjusted = false;
  bool adjustment_fallback = false;
  bool contains = false;  // theta0 in the region
  double size = 0.0;      // interval width or ellipsoid volume
  double pit = -1.0;      // H_n(theta0), PIT studies only
};

struct ReplicateRecord {
  int index = 0;
  bool ok = false;        // data + r_n + pilot succeeded
  std::string error;
  ArmResult acdc;
  ArmResult is_abc;
  long pilot_sims = 0;
  long rn_sims = 0;
};

/// Per-algorithm aggregate over the successful replicates.
struct AlgoSummary {
  std::string algorithm;
  int n_success = 0;
  double coverage = 0.0;
  double coverage_se = 0.0;  // sqrt(c(1-c)/n_success)
  double median_size = 0.0;
  double mean_accepted = 0.0;
  double median_ess = 0.0;
};

struct CoverageReport {
  std::string setting;
  double level = 0.95;
  int replicates = 0;
  std::optional<double> proportion;
  std::vector<AlgoSummary> algos;
  /// Median over replicates (both arms ok) of size_ACDC / size_IS-ABC.
  std::optional<double> median_ratio;
  int n_failed = 0;
  long sampler_sims = 0;  // exactly R_ok * N * arms
  long rn_sims = 0;
  long pilot_sims = 0;
  long total_sims() const { return sampler_sims + rn_sims + pilot_sims; }
  std::vector<ReplicateRecord> records;
};

struct PitReport {
  std::string setting;
  int replicates = 0;
  std::vector<double> pits;  // successful replicates, by replicate order
  PitResult test;
  int n_failed = 0;
};

/// One replicate: simulate data under theta0 with substream(index), build
/// r_n and the pilot standardization from the data, run the configured
/// arm(s) on independent substreams, adjust, build the region, test
/// membership.  Sampler failures mark the arm (or replicate) failed; the
/// study continues.
ReplicateRecord run_replicate(const ExperimentConfig& config, int replicate_index);

/// R replicates (worker pool of config.jobs threads; per-replicate
/// substreams keyed by index make the result order-independent), aggregated
/// into the report.  Throws if more than 20% of replicates failed.
CoverageReport run_coverage_study(const ExperimentConfig& config,
                                  bool both_algorithms);

/// PIT study: per replicate compute H_n(theta0) via cd_value_at on the
/// configured algorithm's sample, aggregate through pit_uniformity.
PitReport run_pit_study(const ExperimentConfig& config, int R);

enum class ReportFormat { kCsv, kMarkdown };

/// Write the report under `out_dir` as <setting>_coverage.csv / .md with the
/// fixed column order: setting, algorithm, acceptance_proportion, coverage,
/// coverage_se, median_size, ratio.  Returns the file path.  Byte-identical
/// across repeated calls.
std::string emit_report(const CoverageReport& report, ReportFormat format,
                        const std::string& out_dir);
std::string emit_report(const PitReport& report, ReportFormat format,
                        const std::string& out_dir);

/// CSV bodies (used by emit_report; exposed for byte-determinism tests).
std::string render_coverage_csv(const CoverageReport& report);
std::string render_coverage_markdown(const CoverageReport& report);
std::string render_pit_csv(const PitReport& report);
std::string render_pit_markdown(const PitReport& report);

}  // namespace acdc
