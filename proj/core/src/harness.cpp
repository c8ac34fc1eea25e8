#include "acdc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "acdc/adjust.hpp"
#include "acdc/kernels.hpp"
#include "acdc/stats.hpp"
#include "acdc/summaries.hpp"

namespace acdc {

namespace {

std::array<bool, 3> parse_ricker_free(const std::string& raw) {
  std::array<bool, 3> mask{false, false, false};
  std::istringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) continue;
    item = item.substr(first, last - first + 1);
    if (item == "log_r") mask[0] = true;
    else if (item == "log_sigma") mask[1] = true;
    else if (item == "log_phi") mask[2] = true;
    else throw DomainError("config: unknown ricker.free entry '" + item + "'");
  }
  if (!mask[0] && !mask[1] && !mask[2])
    throw DomainError("config: ricker.free selects no parameters");
  return mask;
}

ParamVector to_param(const std::vector<double>& v) {
  ParamVector theta(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) theta[static_cast<int>(i)] = v[i];
  return theta;
}

bool rn_is_improper(const std::string& kind) {
  return kind == "flat" || kind == "inv_scale";
}

}  // namespace

ExperimentConfig parse_experiment_config(const Config& cfg) {
  ExperimentConfig ec;
  ec.study = cfg.get_string("study", "coverage");
  if (ec.study != "coverage" && ec.study != "pit")
    throw DomainError("config: study must be 'coverage' or 'pit'");
  ec.name = cfg.get_string("name", "study");
  ec.replicates = static_cast<int>(cfg.get_long("replicates", 200));
  if (ec.replicates < 1) throw DomainError("config: replicates must be >= 1");
  ec.seed = static_cast<std::uint64_t>(
      cfg.get_long("sampler.seed", cfg.get_long("seed", 20240817)));
  ec.jobs = static_cast<int>(cfg.get_long("jobs", 1));
  ec.out_dir = cfg.get_string("out", ".");

  ec.model_name = cfg.get_string("model.name");
  ec.n = static_cast<int>(cfg.get_long("model.n", 400));
  ec.cauchy_free = cfg.get_string("cauchy.free", "loc");
  ec.cauchy_loc = cfg.get_double("cauchy.loc", 10.0);
  ec.cauchy_scale = cfg.get_double("cauchy.scale", 0.55);
  if (cfg.has("ricker.free"))
    ec.ricker_free = parse_ricker_free(cfg.get_string("ricker.free"));
  ec.ricker_fixed.log_r = cfg.get_double("ricker.log_r", 3.8);
  ec.ricker_fixed.log_sigma =
      cfg.get_double("ricker.log_sigma", std::log(0.3));
  ec.ricker_fixed.log_phi = cfg.get_double("ricker.log_phi", std::log(10.0));
  ec.ricker_burn_in = static_cast<int>(cfg.get_long("ricker.burn_in", 50));

  ec.summary_name = cfg.get_string("summary.name");
  summary_spec(ec.summary_name);  // must resolve

  ec.algorithm = cfg.get_string("sampler.algorithm", "both");
  if (ec.algorithm != "acdc" && ec.algorithm != "is_abc" &&
      ec.algorithm != "both")
    throw DomainError("config: sampler.algorithm must be acdc|is_abc|both");
  ec.mc_size = cfg.get_long("sampler.N", 10000);
  if (ec.mc_size < 1) throw DomainError("config: sampler.N must be >= 1");

  ec.kernel_kind = cfg.get_string("kernel.kind", "uniform");
  if (ec.kernel_kind != "uniform" && ec.kernel_kind != "gaussian")
    throw DomainError("config: kernel.kind must be uniform|gaussian");
  if (cfg.has("kernel.proportion") && cfg.has("kernel.epsilon"))
    throw DomainError(
        "config: kernel.proportion and kernel.epsilon are mutually exclusive");
  if (cfg.has("kernel.epsilon")) {
    ec.epsilon = cfg.get_double("kernel.epsilon");
    ec.proportion.reset();
  } else {
    ec.proportion = cfg.get_double("kernel.proportion", 0.05);
  }
  ec.pilot_size = static_cast<int>(cfg.get_long("kernel.pilot_size", 500));
  if (ec.pilot_size < 20)
    throw DomainError("config: kernel.pilot_size must be >= 20");

  ec.rn_kind = cfg.get_string("rn.kind", "minibatch");
  if (ec.rn_kind != "flat" && ec.rn_kind != "inv_scale" &&
      ec.rn_kind != "normal" && ec.rn_kind != "minibatch")
    throw DomainError("config: rn.kind must be flat|inv_scale|normal|minibatch");
  ec.rn_nu = cfg.get_double("rn.nu", 0.5);
  ec.rn_k = static_cast<int>(cfg.get_long("rn.k", 0));
  ec.rn_overlap = cfg.get_bool("rn.overlap", false);
  ec.rn_estimator = cfg.get_string("rn.estimator", "median");
  if (cfg.has("rn.box")) ec.rn_box = cfg.get_box("rn.box");
  ec.rn_mu = cfg.get_double("rn.mu", 0.0);
  ec.rn_b = cfg.get_double("rn.b", 1.0);
  ec.rn_window = static_cast<int>(cfg.get_long("rn.window", 10));
  ec.pmc_particles = static_cast<int>(cfg.get_long("rn.pmc_particles", 256));
  ec.pmc_generations = static_cast<int>(cfg.get_long("rn.pmc_generations", 3));
  if (cfg.has("prior.box")) ec.prior_box = cfg.get_box("prior.box");

  ec.adjust_enabled = cfg.get_bool("adjust.enabled", true);
  ec.level = cfg.get_double("inference.level", 0.95);
  if (!(ec.level > 0.0 && ec.level < 1.0))
    throw DomainError("config: inference.level must be in (0,1)");
  ec.region = cfg.get_string("inference.region", "interval");
  if (ec.region != "interval" && ec.region != "depth")
    throw DomainError("config: inference.region must be interval|depth");
  ec.pit_log_scale = cfg.get_bool("pit.log_scale", false);

  // Truth in the free coordinates: explicit, or the model's fixed values.
  const auto model = [&]() -> std::unique_ptr<GenerativeModel> {
    ExperimentConfig probe = ec;
    probe.theta0 = ParamVector();
    return make_model(probe);
  }();
  if (cfg.has("model.theta0")) {
    ec.theta0 = to_param(cfg.get_doubles("model.theta0"));
  } else {
    if (ec.model_name == "normal") {
      ec.theta0 = to_param({0.0});
    } else if (ec.model_name == "cauchy") {
      if (ec.cauchy_free == "loc") ec.theta0 = to_param({ec.cauchy_loc});
      else if (ec.cauchy_free == "scale") ec.theta0 = to_param({ec.cauchy_scale});
      else ec.theta0 = to_param({ec.cauchy_loc, ec.cauchy_scale});
    } else {
      std::vector<double> t;
      const double vals[3] = {ec.ricker_fixed.log_r, ec.ricker_fixed.log_sigma,
                              ec.ricker_fixed.log_phi};
      for (int j = 0; j < 3; ++j)
        if (ec.ricker_free[static_cast<std::size_t>(j)]) t.push_back(vals[j]);
      ec.theta0 = to_param(t);
    }
  }
  if (ec.theta0.size() != model->param_dim())
    throw DomainError("config: model.theta0 has wrong dimension");
  if (!model->param_support().contains(ec.theta0))
    throw DomainError("config: model.theta0 outside the model support");

  const int p = model->param_dim();
  if (ec.region == "interval" && p != 1)
    throw DomainError("config: interval regions need a scalar parameter");
  if (ec.region == "depth" && p < 2)
    throw DomainError("config: depth regions need p >= 2");
  if (ec.study == "pit" && p != 1)
    throw DomainError("config: pit studies need a scalar parameter");
  if (rn_is_improper(ec.rn_kind) && !ec.rn_box)
    throw DomainError("config: improper rn.kind requires rn.box");
  const bool runs_is = ec.algorithm != "acdc";
  if (runs_is && !ec.prior_box && !ec.rn_box)
    throw DomainError("config: IS-ABC needs prior.box (or rn.box)");
  if (ec.rn_estimator == "pmc" && !ec.rn_box)
    throw DomainError("config: rn.estimator=pmc needs rn.box as prior box");
  return ec;
}

std::unique_ptr<GenerativeModel> make_model(const ExperimentConfig& config) {
  if (config.model_name == "normal")
    return std::make_unique<NormalMeanModel>(config.n);
  if (config.model_name == "cauchy") {
    CauchyModel::Mode mode;
    if (config.cauchy_free == "loc") mode = CauchyModel::Mode::kLocation;
    else if (config.cauchy_free == "scale") mode = CauchyModel::Mode::kScale;
    else if (config.cauchy_free == "both") mode = CauchyModel::Mode::kBoth;
    else throw DomainError("config: cauchy.free must be loc|scale|both");
    return std::make_unique<CauchyModel>(config.n, mode, config.cauchy_loc,
                                         config.cauchy_scale);
  }
  if (config.model_name == "ricker")
    return std::make_unique<RickerModel>(config.n, config.ricker_burn_in,
                                         config.ricker_free,
                                         config.ricker_fixed);
  throw DomainError("config: unknown model '" + config.model_name + "'");
}

namespace {

/// Everything shared by the arms of one replicate.
struct ReplicateContext {
  std::unique_ptr<GenerativeModel> model;
  SummarySpec summary;
  SummaryVector s_obs;
  std::unique_ptr<InitialDensity> rn;
  std::vector<double> lambda;
  long rn_sims = 0;
  long pilot_sims = 0;
};

std::unique_ptr<InitialDensity> build_rn(const ExperimentConfig& config,
                                         const GenerativeModel& model,
                                         const Dataset& data, RngStream rng,
                                         long* rn_sims) {
  const int p = model.param_dim();
  if (config.rn_kind == "flat")
    return std::make_unique<FlatInitial>(p, config.rn_box);
  if (config.rn_kind == "inv_scale")
    return std::make_unique<InvScaleInitial>(config.rn_box);
  if (config.rn_kind == "normal")
    return std::make_unique<NormalInitial>(config.rn_mu, config.rn_b);

  // minibatch
  PmcOptions pmc;
  if (config.rn_estimator == "pmc") {
    pmc.prior_box = *config.rn_box;
    pmc.particles = config.pmc_particles;
    pmc.generations = config.pmc_generations;
  }
  const SummarySpec spec = summary_spec(config.summary_name);
  const PointEstimator estimator = make_point_estimator(
      config.rn_estimator, &model, &spec,
      config.rn_estimator == "pmc" ? &pmc : nullptr, rn_sims);
  auto support = model.param_support();
  if (model.name() == "ricker") {
    const int k = config.rn_k > 0 ? config.rn_k : 40;
    return std::make_unique<MinibatchKDE>(make_minibatch_rn_windows(
        data, config.rn_window, k, estimator, rng, support));
  }
  const auto m = static_cast<int>(
      std::floor(std::pow(static_cast<double>(data.size()), config.rn_nu)));
  const int k = config.rn_k > 0
                    ? config.rn_k
                    : std::max(1, static_cast<int>(data.size()) / std::max(2, m));
  return std::make_unique<MinibatchKDE>(make_minibatch_rn(
      data, config.rn_nu, k, estimator, config.rn_overlap, rng, support));
}

std::optional<ParamBounds> sampling_box(const ExperimentConfig& config) {
  if (rn_is_improper(config.rn_kind)) return config.rn_box;
  return std::nullopt;
}

ParamBounds resolved_prior_box(const ExperimentConfig& config) {
  if (config.prior_box) return *config.prior_box;
  if (config.rn_box) return *config.rn_box;
  throw DomainError("harness: IS-ABC prior box unresolved");
}

ArmResult run_arm(const ExperimentConfig& config, const ReplicateContext& ctx,
                  bool is_abc_arm, RngStream arm_rng) {
  ArmResult res;
  try {
    KernelSpec kernel;
    kernel.kind = config.kernel_kind == "uniform" ? KernelKind::kUniform
                                                  : KernelKind::kGaussian;
    kernel.epsilon = config.epsilon.value_or(1.0);
    kernel.lambda_scale = ctx.lambda;
    SamplerRunOptions opts;
    opts.proportion = config.proportion;
    opts.sample_box = sampling_box(config);

    CDSample sample;
    if (is_abc_arm) {
      const FlatInitial prior(ctx.model->param_dim(),
                              resolved_prior_box(config));
      sample = run_is_abc(*ctx.model, ctx.summary, *ctx.rn, prior, kernel,
                          config.mc_size, ctx.s_obs, arm_rng, opts);
    } else {
      sample = run_acdc(*ctx.model, ctx.summary, *ctx.rn, kernel,
                        config.mc_size, ctx.s_obs, arm_rng, opts);
    }
    res.accepted = static_cast<long>(sample.draws.size());
    res.n_diverged = sample.n_diverged;
    res.epsilon_used = sample.epsilon_used;

    if (config.adjust_enabled) {
      try {
        const RegressionFit fit = fit_regression(sample);
        sample = apply_adjustment(sample, fit);
        res.adjusted = true;
      } catch (const SingularDesignError&) {
        res.adjustment_fallback = true;  // keep the unadjusted sample
      }
    }
    res.ess = effective_sample_size(sample);

    if (config.study == "pit") {
      double t0 = config.theta0[0];
      if (config.pit_log_scale) {
        // Location pivot in log coordinates (scale families).
        if (!(t0 > 0.0))
          throw DomainError("pit: log scale needs positive theta0");
        CDSample logsample = sample;
        for (auto& draw : logsample.draws) {
          if (!(draw.theta[0] > 0.0))
            throw DomainError("pit: log scale needs positive draws");
          draw.theta[0] = std::log(draw.theta[0]);
        }
        res.pit = cd_value_at(logsample, 0, std::log(t0));
      } else {
        res.pit = cd_value_at(sample, 0, t0);
      }
    } else {
      if (config.region == "depth") {
        const ConfidenceRegion region = depth_region(sample, config.level);
        res.contains = region_contains(region, config.theta0);
        res.size = region.size;
      } else {
        const ConfidenceRegion region =
            confidence_interval(sample, 0, config.level);
        res.contains = region_contains(region, config.theta0);
        res.size = region.size;
      }
    }
    res.ok = true;
  } catch (const std::exception& e) {
    res.ok = false;
    res.error = e.what();
  }
  return res;
}

}  // namespace

ReplicateRecord run_replicate(const ExperimentConfig& config,
                              int replicate_index) {
  ReplicateRecord rec;
  rec.index = replicate_index;
  const RngStream rep =
      RngStream(config.seed).substream(static_cast<std::uint64_t>(replicate_index));

  ReplicateContext ctx;
  try {
    ctx.model = make_model(config);
    ctx.summary = summary_spec(config.summary_name);
    RngStream data_rng = rep.substream(stream_tag::kData);
    const Dataset data = ctx.model->simulate(config.theta0, data_rng);
    ctx.s_obs = apply_summary(config.summary_name, data);

    ctx.rn = build_rn(config, *ctx.model, data,
                      rep.substream(stream_tag::kInitialDensity), &ctx.rn_sims);

    // Pilot run under r_n for the Lambda standardization, shared by both
    // arms so their distances are identical.
    RngStream pilot_rng = rep.substream(stream_tag::kPilot);
    const auto box = sampling_box(config);
    std::vector<SummaryVector> pilot_summaries;
    pilot_summaries.reserve(static_cast<std::size_t>(config.pilot_size));
    for (int i = 0; i < config.pilot_size; ++i) {
      RngStream it_rng = pilot_rng.substream(static_cast<std::uint64_t>(i));
      const ParamVector theta = sample_initial(*ctx.rn, it_rng, box);
      ++ctx.pilot_sims;
      try {
        const Dataset x = ctx.model->simulate(theta, it_rng);
        pilot_summaries.push_back(apply_summary(config.summary_name, x));
      } catch (const SimulationDiverged&) {
      } catch (const DegenerateSummaryError&) {
      }
    }
    if (pilot_summaries.size() < 20)
      throw AcdcError("pilot: fewer than 20 valid pilot summaries");
    ctx.lambda = standardize_scales(pilot_summaries);
    rec.ok = true;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
    rec.rn_sims = ctx.rn_sims;
    rec.pilot_sims = ctx.pilot_sims;
    return rec;
  }
  rec.rn_sims = ctx.rn_sims;
  rec.pilot_sims = ctx.pilot_sims;

  if (config.algorithm != "is_abc")
    rec.acdc = run_arm(config, ctx, false, rep.substream(stream_tag::kAcdc));
  if (config.algorithm != "acdc")
    rec.is_abc = run_arm(config, ctx, true, rep.substream(stream_tag::kIsAbc));
  return rec;
}

namespace {

std::vector<ReplicateRecord> run_all_replicates(const ExperimentConfig& config,
                                                int R) {
  std::vector<ReplicateRecord> records(static_cast<std::size_t>(R));
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (int i = 0; i < R; ++i) records[static_cast<std::size_t>(i)] =
        run_replicate(config, i);
    return records;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(jobs));
  auto worker = [&](int t) {
    try {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= R) break;
        records[static_cast<std::size_t>(i)] = run_replicate(config, i);
      }
    } catch (...) {
      errs[static_cast<std::size_t>(t)] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
  for (auto& th : pool) th.join();
  for (auto& err : errs)
    if (err) std::rethrow_exception(err);
  return records;
}

AlgoSummary summarize_arm(const std::string& name,
                          const std::vector<ReplicateRecord>& records,
                          bool is_abc_arm) {
  AlgoSummary summary;
  summary.algorithm = name;
  std::vector<double> sizes;
  std::vector<double> esses;
  double hits = 0.0;
  double accepted = 0.0;
  for (const auto& rec : records) {
    const ArmResult& arm = is_abc_arm ? rec.is_abc : rec.acdc;
    if (!rec.ok || !arm.ok) continue;
    ++summary.n_success;
    hits += arm.contains ? 1.0 : 0.0;
    sizes.push_back(arm.size);
    esses.push_back(arm.ess);
    accepted += static_cast<double>(arm.accepted);
  }
  if (summary.n_success > 0) {
    const auto ns = static_cast<double>(summary.n_success);
    summary.coverage = hits / ns;
    summary.coverage_se =
        std::sqrt(summary.coverage * (1.0 - summary.coverage) / ns);
    const std::vector<double> unit(sizes.size(), 1.0);
    summary.median_size = weighted_quantile(sizes, unit, 0.5);
    summary.median_ess = weighted_quantile(esses, unit, 0.5);
    summary.mean_accepted = accepted / ns;
  }
  return summary;
}

}  // namespace

CoverageReport run_coverage_study(const ExperimentConfig& config,
                                  bool both_algorithms) {
  ExperimentConfig cfg = config;
  cfg.study = "coverage";
  if (both_algorithms) cfg.algorithm = "both";
  const int R = cfg.replicates;
  auto records = run_all_replicates(cfg, R);

  CoverageReport report;
  report.setting = cfg.name;
  report.level = cfg.level;
  report.replicates = R;
  report.proportion = cfg.proportion;
  report.records = records;

  const bool run_acdc_arm = cfg.algorithm != "is_abc";
  const bool run_is_arm = cfg.algorithm != "acdc";
  const int arms = (run_acdc_arm ? 1 : 0) + (run_is_arm ? 1 : 0);

  for (const auto& rec : records) {
    const bool arms_ok = rec.ok && (!run_acdc_arm || rec.acdc.ok) &&
                         (!run_is_arm || rec.is_abc.ok);
    if (!arms_ok) ++report.n_failed;
    report.rn_sims += rec.rn_sims;
    report.pilot_sims += rec.pilot_sims;
    if (rec.ok) report.sampler_sims += cfg.mc_size * arms;
  }

  if (run_acdc_arm) report.algos.push_back(summarize_arm("acdc", records, false));
  if (run_is_arm) report.algos.push_back(summarize_arm("is_abc", records, true));

  if (run_acdc_arm && run_is_arm) {
    std::vector<double> ratios;
    for (const auto& rec : records) {
      if (rec.ok && rec.acdc.ok && rec.is_abc.ok && rec.is_abc.size > 0.0)
        ratios.push_back(rec.acdc.size / rec.is_abc.size);
    }
    if (!ratios.empty()) {
      const std::vector<double> unit(ratios.size(), 1.0);
      report.median_ratio = weighted_quantile(ratios, unit, 0.5);
    }
  }

  if (report.n_failed > 0.2 * R)
    throw AcdcError("run_coverage_study: more than 20% of replicates failed (" +
                    std::to_string(report.n_failed) + "/" + std::to_string(R) +
                    ")");
  return report;
}

PitReport run_pit_study(const ExperimentConfig& config, int R) {
  ExperimentConfig cfg = config;
  cfg.study = "pit";
  cfg.replicates = R;
  if (cfg.algorithm == "both") cfg.algorithm = "acdc";
  auto records = run_all_replicates(cfg, R);

  PitReport report;
  report.setting = cfg.name;
  report.replicates = R;
  const bool is_abc_arm = cfg.algorithm == "is_abc";
  for (const auto& rec : records) {
    const ArmResult& arm = is_abc_arm ? rec.is_abc : rec.acdc;
    if (rec.ok && arm.ok) report.pits.push_back(arm.pit);
    else ++report.n_failed;
  }
  if (report.n_failed > 0.2 * R)
    throw AcdcError("run_pit_study: more than 20% of replicates failed");
  report.test = pit_uniformity(report.pits);
  return report;
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw AcdcError("emit_report: cannot write '" + path + "'");
  out << text;
  if (!out) throw AcdcError("emit_report: write failed for '" + path + "'");
}

double realized_proportion(const CoverageReport& report,
                           const AlgoSummary& algo, long mc_size) {
  if (report.proportion) return *report.proportion;
  return mc_size > 0 ? algo.mean_accepted / static_cast<double>(mc_size) : 0.0;
}

}  // namespace

std::string render_coverage_csv(const CoverageReport& report) {
  std::string text =
      "setting,algorithm,acceptance_proportion,coverage,coverage_se,"
      "median_size,ratio\n";
  long mc_size = 0;
  if (!report.records.empty()) {
    // sampler_sims = R_ok * N * arms; recover N from the bookkeeping.
    long ok = 0;
    for (const auto& rec : report.records)
      if (rec.ok) ++ok;
    const long arms = static_cast<long>(report.algos.size());
    if (ok > 0 && arms > 0) mc_size = report.sampler_sims / (ok * arms);
  }
  for (const auto& algo : report.algos) {
    text += report.setting + "," + algo.algorithm + "," +
            fmt("%.4f", realized_proportion(report, algo, mc_size)) + "," +
            fmt("%.4f", algo.coverage) + "," + fmt("%.4f", algo.coverage_se) +
            "," + fmt("%.6g", algo.median_size) + ",";
    if (report.median_ratio) text += fmt("%.4f", *report.median_ratio);
    text += "\n";
  }
  return text;
}

std::string render_coverage_markdown(const CoverageReport& report) {
  std::string text = "# Coverage study: " + report.setting + "\n\n";
  text += "- level: " + fmt("%.2f", report.level) + "\n";
  text += "- replicates: " + std::to_string(report.replicates) +
          " (failed: " + std::to_string(report.n_failed) + ")\n";
  if (report.proportion)
    text += "- acceptance proportion: " + fmt("%.4f", *report.proportion) + "\n";
  text += "- simulations: sampler " + std::to_string(report.sampler_sims) +
          " + rn " + std::to_string(report.rn_sims) + " + pilot " +
          std::to_string(report.pilot_sims) + " = " +
          std::to_string(report.total_sims()) + "\n\n";
  text +=
      "| algorithm | coverage | se | median size | mean accepted | median ESS "
      "|\n|---|---|---|---|---|---|\n";
  for (const auto& algo : report.algos) {
    text += "| " + algo.algorithm + " | " + fmt("%.4f", algo.coverage) + " | " +
            fmt("%.4f", algo.coverage_se) + " | " +
            fmt("%.6g", algo.median_size) + " | " +
            fmt("%.1f", algo.mean_accepted) + " | " +
            fmt("%.1f", algo.median_ess) + " |\n";
  }
  if (report.median_ratio)
    text += "\nMedian paired size ratio (acdc / is_abc): " +
            fmt("%.4f", *report.median_ratio) + "\n";
  return text;
}

std::string render_pit_csv(const PitReport& report) {
  std::string text = "replicate,pit\n";
  for (std::size_t i = 0; i < report.pits.size(); ++i)
    text += std::to_string(i) + "," + fmt("%.6f", report.pits[i]) + "\n";
  return text;
}

std::string render_pit_markdown(const PitReport& report) {
  std::string text = "# PIT study: " + report.setting + "\n\n";
  text += "- replicates: " + std::to_string(report.replicates) +
          " (failed: " + std::to_string(report.n_failed) + ")\n";
  text += "- KS distance: " + fmt("%.4f", report.test.ks) + "\n";
  text += "- 1% critical value: " + fmt("%.4f", report.test.critical) + "\n";
  text += std::string("- result: ") + (report.test.pass ? "PASS" : "FAIL") +
          "\n";
  return text;
}

std::string emit_report(const CoverageReport& report, ReportFormat format,
                        const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string base = out_dir + "/" + report.setting + "_coverage";
  if (format == ReportFormat::kCsv) {
    const std::string path = base + ".csv";
    write_text_file(path, render_coverage_csv(report));
    return path;
  }
  const std::string path = base + ".md";
  write_text_file(path, render_coverage_markdown(report));
  return path;
}

std::string emit_report(const PitReport& report, ReportFormat format,
                        const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string base = out_dir + "/" + report.setting + "_pit";
  if (format == ReportFormat::kCsv) {
    const std::string path = base + ".csv";
    write_text_file(path, render_pit_csv(report));
    return path;
  }
  const std::string path = base + ".md";
  write_text_file(path, render_pit_markdown(report));
  return path;
}

}  // namespace acdc
