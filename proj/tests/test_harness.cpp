#include <doctest.h>

#include <cmath>
#include <string>

#include "acdc/config.hpp"
#include "acdc/harness.hpp"
#include "acdc/stats.hpp"
#include "acdc/types.hpp"

using namespace acdc;

namespace {
Config minimal_normal() {
  return Config::from_string(
      "study = coverage\n"
      "name = unit\n"
      "replicates = 20\n"
      "seed = 7\n"
      "model.name = normal\n"
      "model.n = 60\n"
      "model.theta0 = 0.3\n"
      "summary.name = mean\n"
      "sampler.algorithm = both\n"
      "sampler.N = 500\n"
      "kernel.kind = uniform\n"
      "kernel.proportion = 0.1\n"
      "kernel.pilot_size = 40\n"
      "rn.kind = flat\n"
      "rn.box = -3, 3\n"
      "adjust.enabled = true\n"
      "inference.level = 0.95\n"
      "inference.region = interval\n");
}
}  // namespace

TEST_CASE("harness: config defaults and validation") {
  const ExperimentConfig cfg = parse_experiment_config(minimal_normal());
  CHECK(cfg.model_name == "normal");
  CHECK(cfg.replicates == 20);
  CHECK(cfg.theta0.size() == 1);
  CHECK(cfg.theta0[0] == doctest::Approx(0.3));
  REQUIRE(cfg.proportion.has_value());
  CHECK(*cfg.proportion == doctest::Approx(0.1));
  CHECK(!cfg.epsilon.has_value());
  CHECK(cfg.mc_size == 500);
  REQUIRE(cfg.rn_box.has_value());
  CHECK(cfg.rn_box->lower[0] == -3.0);

  // cauchy theta0 defaults to the fixed true values per mode
  Config c = Config::from_string(
      "model.name = cauchy\n"
      "model.n = 100\n"
      "cauchy.free = scale\n"
      "cauchy.loc = 10\n"
      "cauchy.scale = 0.55\n"
      "summary.name = mad\n"
      "rn.kind = inv_scale\n"
      "rn.box = 0.01, 5\n");
  const ExperimentConfig cc = parse_experiment_config(c);
  CHECK(cc.theta0.size() == 1);
  CHECK(cc.theta0[0] == doctest::Approx(0.55));

  auto expect_throw = [](const std::string& text) {
    CHECK_THROWS_AS(parse_experiment_config(Config::from_string(text)),
                    AcdcError);
  };
  // unknown blocks / inconsistent combinations
  expect_throw("model.name = pareto\nsummary.name = mean\n");
  expect_throw(
      "study = horoscope\nmodel.name = normal\nsummary.name = mean\n"
      "rn.kind = flat\nrn.box = -1, 1\n");
  // both epsilon and proportion
  expect_throw(
      "model.name = normal\nsummary.name = mean\nrn.kind = flat\n"
      "rn.box = -1, 1\nkernel.proportion = 0.1\nkernel.epsilon = 0.2\n");
  // theta0 outside the support
  expect_throw(
      "model.name = cauchy\ncauchy.free = scale\nmodel.theta0 = -2\n"
      "summary.name = mad\nrn.kind = inv_scale\nrn.box = 0.01, 5\n");
  // interval region with a 2-dim parameter
  expect_throw(
      "model.name = cauchy\ncauchy.free = both\nsummary.name = median_mad\n"
      "rn.kind = flat\nrn.box = 0, 20; 0.01, 5\ninference.region = interval\n");
  // pit study needs scalar theta
  expect_throw(
      "study = pit\nmodel.name = cauchy\ncauchy.free = both\n"
      "summary.name = median_mad\nrn.kind = flat\nrn.box = 0,20; 0.01,5\n"
      "inference.region = depth\n");
  // improper rn without a box
  expect_throw("model.name = normal\nsummary.name = mean\nrn.kind = flat\n");
  // pmc estimator requires rn.box
  expect_throw(
      "model.name = ricker\nricker.free = log_r\nsummary.name = ricker13\n"
      "rn.kind = minibatch\nrn.estimator = pmc\n");
}

TEST_CASE("harness: model factory dimensions") {
  Config c = Config::from_string(
      "model.name = ricker\n"
      "model.n = 50\n"
      "ricker.free = log_r, log_phi\n"
      "ricker.log_r = 3.8\n"
      "ricker.log_sigma = -1.2039728043259361\n"
      "ricker.log_phi = 2.302585092994046\n"
      "summary.name = ricker13\n"
      "rn.kind = minibatch\n"
      "rn.estimator = pmc\n"
      "rn.box = 2, 6; 1, 3.5\n"
      "inference.region = depth\n");
  const ExperimentConfig cfg = parse_experiment_config(c);
  const auto model = make_model(cfg);
  CHECK(model->param_dim() == 2);
  CHECK(model->sample_size() == 50);
  CHECK(cfg.theta0.size() == 2);
  CHECK(cfg.theta0[0] == doctest::Approx(3.8));
  CHECK(cfg.theta0[1] == doctest::Approx(2.302585092994046));

  const ExperimentConfig cfg2 = parse_experiment_config(Config::from_string(
      "model.name = cauchy\ncauchy.free = both\nsummary.name = median_mad\n"
      "rn.kind = flat\nrn.box = 0, 20; 0.01, 5\ninference.region = depth\n"));
  CHECK(make_model(cfg2)->param_dim() == 2);
}

TEST_CASE("harness: replicates are deterministic and index-keyed") {
  const ExperimentConfig cfg = parse_experiment_config(minimal_normal());

  const ReplicateRecord a = run_replicate(cfg, 3);
  const ReplicateRecord b = run_replicate(cfg, 3);
  CHECK(a.ok);
  CHECK(b.ok);
  CHECK(a.acdc.ok == b.acdc.ok);
  CHECK(a.acdc.size == b.acdc.size);
  CHECK(a.acdc.contains == b.acdc.contains);
  CHECK(a.acdc.epsilon_used == b.acdc.epsilon_used);
  CHECK(a.is_abc.size == b.is_abc.size);
  CHECK(a.pilot_sims == b.pilot_sims);

  const ReplicateRecord c = run_replicate(cfg, 4);
  CHECK(c.ok);
  CHECK(c.acdc.size != a.acdc.size);  // different data stream
}

TEST_CASE("harness: coverage study accounting and rendering") {
  const ExperimentConfig cfg = parse_experiment_config(minimal_normal());
  const CoverageReport rep = run_coverage_study(cfg, /*both_algorithms=*/true);

  CHECK(rep.replicates == 20);
  CHECK(rep.n_failed == 0);
  CHECK(rep.sampler_sims == 20L * 500L * 2L);
  CHECK(rep.records.size() == 20);
  REQUIRE(rep.algos.size() == 2);
  for (const AlgoSummary& a : rep.algos) {
    CHECK(a.n_success == 20);
    CHECK(a.coverage >= 0.0);
    CHECK(a.coverage <= 1.0);
    CHECK(a.coverage_se ==
          doctest::Approx(std::sqrt(a.coverage * (1.0 - a.coverage) / 20.0))
              .epsilon(1e-12));
    CHECK(a.median_size > 0.0);
    CHECK(a.mean_accepted == doctest::Approx(50.0));  // ceil(0.1*500)
  }
  CHECK(rep.median_ratio.has_value());
  CHECK(*rep.median_ratio > 0.0);

  // renders are byte-stable across repeated invocations and jobs settings
  const std::string csv1 = render_coverage_csv(rep);
  ExperimentConfig threaded = cfg;
  threaded.jobs = 3;
  const CoverageReport rep2 = run_coverage_study(threaded, true);
  const std::string csv2 = render_coverage_csv(rep2);
  CHECK(csv1 == csv2);
  CHECK(csv1.find("setting,algorithm,acceptance_proportion,coverage") == 0);
  CHECK(csv1.find("unit,acdc") != std::string::npos);
  CHECK(csv1.find("unit,is_abc") != std::string::npos);

  const std::string md = render_coverage_markdown(rep);
  CHECK(md.find("| algorithm |") != std::string::npos);
  CHECK(md.find("0.95") != std::string::npos);

  // empty report still renders the header
  const CoverageReport empty;
  const std::string hdr = render_coverage_csv(empty);
  CHECK(hdr.find("setting,algorithm") == 0);
}

TEST_CASE("harness: study fails loudly when most replicates break") {
  // a cauchy-scale model with an r_n centered far outside the support makes
  // every replicate throw -> the study must refuse to aggregate
  Config c = Config::from_string(
      "study = coverage\n"
      "name = broken\n"
      "replicates = 8\n"
      "seed = 5\n"
      "model.name = cauchy\n"
      "model.n = 40\n"
      "cauchy.free = scale\n"
      "cauchy.loc = 0\n"
      "cauchy.scale = 0.5\n"
      "summary.name = mad\n"
      "sampler.algorithm = acdc\n"
      "sampler.N = 200\n"
      "kernel.proportion = 0.1\n"
      "kernel.pilot_size = 30\n"
      "rn.kind = normal\n"
      "rn.mu = -5\n"
      "rn.b = 20\n"
      "inference.region = interval\n");
  const ExperimentConfig cfg = parse_experiment_config(c);
  CHECK_THROWS_AS(run_coverage_study(cfg, false), AcdcError);
}

TEST_CASE("harness: pit study structure") {
  Config c = Config::from_string(
      "study = pit\n"
      "name = pit_unit\n"
      "replicates = 120\n"
      "seed = 11\n"
      "model.name = normal\n"
      "model.n = 50\n"
      "model.theta0 = 0\n"
      "summary.name = mean\n"
      "sampler.algorithm = acdc\n"
      "sampler.N = 300\n"
      "kernel.proportion = 0.1\n"
      "kernel.pilot_size = 30\n"
      "rn.kind = flat\n"
      "rn.box = -5, 5\n"
      "adjust.enabled = true\n");
  const ExperimentConfig cfg = parse_experiment_config(c);
  const PitReport rep = run_pit_study(cfg, 120);
  CHECK(rep.replicates == 120);
  CHECK(rep.n_failed == 0);
  REQUIRE(rep.pits.size() == 120);
  for (double p : rep.pits) {
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  CHECK(rep.test.n == 120);
  CHECK(rep.test.critical == doctest::Approx(1.628 / std::sqrt(120.0)));
  // NOTE: no KS-pass assertion at this tiny mc size; the acceptance suite
  // runs the full-strength version.

  const std::string csv = render_pit_csv(rep);
  CHECK(csv.find("replicate,pit") == 0);
  const std::string md = render_pit_markdown(rep);
  CHECK(md.find("KS") != std::string::npos);

  // a deliberately wrong r_n (point mass away from theta0, no adjustment)
  // produces visibly non-uniform PITs -- the test statistic must notice
  Config bad = Config::from_string(
      "study = pit\n"
      "name = pit_bad\n"
      "replicates = 120\n"
      "seed = 12\n"
      "model.name = normal\n"
      "model.n = 50\n"
      "model.theta0 = 0\n"
      "summary.name = mean\n"
      "sampler.algorithm = acdc\n"
      "sampler.N = 300\n"
      "kernel.proportion = 0.5\n"
      "kernel.pilot_size = 30\n"
      "rn.kind = normal\n"
      "rn.mu = 0.45\n"
      "rn.b = 25\n"
      "adjust.enabled = false\n");
  const PitReport bad_rep = run_pit_study(parse_experiment_config(bad), 120);
  CHECK(bad_rep.test.ks > bad_rep.test.critical);
}
