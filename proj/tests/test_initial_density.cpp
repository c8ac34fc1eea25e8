#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "acdc/initial_density.hpp"
#include "acdc/models.hpp"
#include "acdc/rng.hpp"
#include "acdc/summaries.hpp"
#include "acdc/types.hpp"
#include "oracle_helpers.hpp"

using namespace acdc;

namespace {
ParamVector pv(std::initializer_list<double> vals) {
  ParamVector v(static_cast<int>(vals.size()));
  int i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

ParamBounds box1(double lo, double hi) {
  ParamBounds b;
  b.lower = Eigen::VectorXd::Constant(1, lo);
  b.upper = Eigen::VectorXd::Constant(1, hi);
  return b;
}

ParamBounds box2(double lo0, double hi0, double lo1, double hi1) {
  ParamBounds b;
  b.lower = Eigen::VectorXd(2);
  b.upper = Eigen::VectorXd(2);
  b.lower << lo0, lo1;
  b.upper << hi0, hi1;
  return b;
}
}  // namespace

TEST_CASE("initial: flat density semantics") {
  FlatInitial flat(1);
  CHECK(!flat.proper());
  CHECK(flat.log_density(pv({3.0})) == 0.0);
  RngStream rng(1);
  CHECK_THROWS_AS(flat.sample(rng), DomainError);  // no box to draw from

  FlatInitial boxed(2, box2(0, 1, 10, 12));
  CHECK(boxed.log_density(pv({0.5, 11.0})) == 0.0);
  CHECK(boxed.log_density(pv({2.0, 11.0})) ==
        -std::numeric_limits<double>::infinity());
  for (int i = 0; i < 200; ++i) {
    const ParamVector t = boxed.sample(rng);
    CHECK(t[0] >= 0.0);
    CHECK(t[0] <= 1.0);
    CHECK(t[1] >= 10.0);
    CHECK(t[1] <= 12.0);
  }

  // sample_initial supplies the box for improper densities...
  const ParamVector t = sample_initial(flat, rng, box1(-2, -1));
  CHECK(t[0] >= -2.0);
  CHECK(t[0] <= -1.0);
  CHECK_THROWS_AS(sample_initial(flat, rng), DomainError);
}

TEST_CASE("initial: proper density ignores the caller box") {
  // a KDE centered at 0 keeps sampling near 0 even when the caller passes a
  // faraway box -- the box only applies to improper members
  MinibatchKDE kde({pv({0.0})}, Eigen::VectorXd::Constant(1, 0.1));
  RngStream rng(2);
  for (int i = 0; i < 100; ++i) {
    const ParamVector t = sample_initial(kde, rng, box1(100, 101));
    CHECK(std::fabs(t[0]) < 1.0);
  }
}

TEST_CASE("initial: inverse-scale density") {
  InvScaleInitial inv(box1(1.0, std::exp(2.0)));
  CHECK(inv.log_density(pv({2.0})) == doctest::Approx(-std::log(2.0)));
  CHECK(inv.log_density(pv({0.0})) ==
        -std::numeric_limits<double>::infinity());
  CHECK(inv.log_density(pv({-1.0})) ==
        -std::numeric_limits<double>::infinity());

  // log-uniform sampling on [1, e^2]: P(theta < e) = 1/2
  RngStream rng(3);
  int below = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const ParamVector t = inv.sample(rng);
    CHECK(t[0] >= 1.0);
    CHECK(t[0] <= std::exp(2.0));
    if (t[0] < std::exp(1.0)) ++below;
  }
  CHECK(std::fabs(below / static_cast<double>(n) - 0.5) < 0.015);

  InvScaleInitial unboxed;
  CHECK_THROWS_AS(unboxed.sample(rng), DomainError);
}

TEST_CASE("initial: normal density") {
  NormalInitial normal(0.5, 2.0);  // mean 0.5, sd 1/2
  const double sd = 0.5;
  const double at_mean = normal.log_density(pv({0.5}));
  CHECK(at_mean ==
        doctest::Approx(-0.5 * std::log(2.0 * M_PI * sd * sd)).epsilon(1e-12));
  CHECK(normal.log_density(pv({1.0})) ==
        doctest::Approx(at_mean - 0.5).epsilon(1e-12));

  RngStream rng(4);
  double s1 = 0.0, s2 = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const double t = normal.sample(rng)[0];
    s1 += t;
    s2 += t * t;
  }
  const double m = s1 / n;
  CHECK(std::fabs(m - 0.5) < 4.0 * sd / std::sqrt(n));
  CHECK(std::fabs(std::sqrt(s2 / n - m * m) - sd) < 0.01);
}

TEST_CASE("initial: KDE density normalizes to one") {
  const std::vector<ParamVector> centers = {pv({-1.0}), pv({0.0}), pv({2.5})};
  MinibatchKDE kde(centers, Eigen::VectorXd::Constant(1, 0.7));
  // kde_density is the exp of log_density
  CHECK(kde_density(kde, pv({0.3})) ==
        doctest::Approx(std::exp(kde.log_density(pv({0.3})))).epsilon(1e-12));

  const double total = test_oracle::adaptive_simpson(
      [&](double t) { return kde_density(kde, pv({t})); }, -12.0, 14.0, 1e-10);
  CHECK(std::fabs(total - 1.0) <= 1e-3);

  // 2-D product kernel integrates to one as well
  const std::vector<ParamVector> c2 = {pv({0.0, 1.0}), pv({1.5, -0.5})};
  Eigen::VectorXd h2(2);
  h2 << 0.5, 0.9;
  MinibatchKDE kde2(c2, h2);
  const double total2 = test_oracle::adaptive_simpson(
      [&](double x) {
        return test_oracle::adaptive_simpson(
            [&](double y) { return kde_density(kde2, pv({x, y})); }, -10.0,
            10.0, 1e-9);
      },
      -10.0, 12.0, 1e-8);
  CHECK(std::fabs(total2 - 1.0) <= 1e-3);
}

TEST_CASE("initial: KDE support truncation") {
  MinibatchKDE kde({pv({0.05})}, Eigen::VectorXd::Constant(1, 0.5),
                   box1(0.0, 10.0));
  RngStream rng(5);
  for (int i = 0; i < 500; ++i) {
    const double t = kde.sample(rng)[0];
    CHECK(t >= 0.0);
    CHECK(t <= 10.0);
  }
  CHECK(kde.log_density(pv({-0.1})) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("initial: silverman bandwidth") {
  // sd({0,1,2}) with the k-1 divisor is 1; 1.06 * 3^{-1/5} frozen below
  const Eigen::VectorXd h =
      silverman_bandwidth({pv({0.0}), pv({1.0}), pv({2.0})});
  CHECK(h[0] == doctest::Approx(0.8509060554658446).epsilon(1e-12));

  // coincident centers fall back to a small positive width
  const Eigen::VectorXd h7 =
      silverman_bandwidth({pv({7.0}), pv({7.0}), pv({7.0})});
  CHECK(h7[0] > 0.0);
  CHECK(h7[0] <= 0.01);
  const Eigen::VectorXd h0 =
      silverman_bandwidth({pv({0.0}), pv({0.0}), pv({0.0})});
  CHECK(h0[0] > 0.0);
}

TEST_CASE("initial: minibatch subsets partition the data when disjoint") {
  Dataset data(100);
  for (int i = 0; i < 100; ++i) data[i] = i;

  // a "capture" estimator records which points each subset saw via their sum
  std::vector<std::vector<double>> seen;
  PointEstimator capture = [&seen](const Dataset& subset, RngStream) {
    seen.push_back(subset);
    ParamVector out(1);
    out[0] = subset.empty() ? 0.0 : subset[0];
    return out;
  };

  RngStream rng(6);
  seen.clear();
  MinibatchKDE kde = make_minibatch_rn(data, 0.5, 10, capture, false, rng);
  CHECK(kde.k() == 10);
  REQUIRE(seen.size() == 10);
  std::multiset<double> all;
  for (const auto& s : seen) {
    CHECK(s.size() == 10);  // floor(100^0.5)
    all.insert(s.begin(), s.end());
  }
  // disjoint subsets with k*m == n use every point exactly once
  CHECK(all.size() == 100);
  std::set<double> uniq(all.begin(), all.end());
  CHECK(uniq.size() == 100);

  // overlap mode still produces k subsets of the right size
  seen.clear();
  RngStream rng2(7);
  MinibatchKDE kde_overlap =
      make_minibatch_rn(data, 0.5, 25, capture, true, rng2);
  CHECK(kde_overlap.k() == 25);
  for (const auto& s : seen) CHECK(s.size() == 10);

  CHECK_THROWS_AS(
      make_minibatch_rn({1.0, 2.0, 3.0}, 0.1, 4, capture, false, RngStream(8)),
      DomainError);  // subsets of size < 2
}

TEST_CASE("initial: windowed minibatch covers the series") {
  Dataset data(50);
  for (int i = 0; i < 50; ++i) data[i] = i;
  std::vector<std::vector<double>> seen;
  PointEstimator capture = [&seen](const Dataset& subset, RngStream) {
    seen.push_back(subset);
    ParamVector out(1);
    out[0] = subset[0];
    return out;
  };

  RngStream rng(9);
  MinibatchKDE kde = make_minibatch_rn_windows(data, 10, 40, capture, rng);
  CHECK(kde.k() == 40);
  REQUIRE(seen.size() == 40);
  // first window starts at 0, last at T - L = 40; all contiguous length 10
  CHECK(seen.front().front() == 0.0);
  CHECK(seen.back().front() == 40.0);
  for (const auto& w : seen) {
    REQUIRE(w.size() == 10);
    for (std::size_t j = 1; j < w.size(); ++j)
      CHECK(w[j] == doctest::Approx(w[j - 1] + 1.0));
  }

  CHECK_THROWS_AS(make_minibatch_rn_windows(data, 1, 5, capture, RngStream(1)),
                  DomainError);
  CHECK_THROWS_AS(
      make_minibatch_rn_windows(data, 60, 5, capture, RngStream(1)),
      DomainError);

  // estimator failures surface with subset context
  PointEstimator boom = [](const Dataset&, RngStream) -> ParamVector {
    throw DomainError("nope");
  };
  try {
    make_minibatch_rn_windows(data, 10, 4, boom, RngStream(2));
    FAIL("expected error");
  } catch (const AcdcError& e) {
    CHECK(std::string(e.what()).find("subset") != std::string::npos);
  }
}

TEST_CASE("initial: pmc point estimate tracks the subset mean") {
  // Normal mean model: E(theta | subset) for a flat prior is about the
  // subset mean; PMC with a generous box should land nearby.
  NormalMeanModel model(40);
  RngStream data_rng(10);
  const Dataset subset = model.simulate(pv({1.2}), data_rng);
  double mean = 0.0;
  for (double v : subset) mean += v;
  mean /= subset.size();

  const SummarySpec spec = summary_spec("mean");
  PmcOptions opts;
  opts.prior_box = box1(-10.0, 10.0);
  opts.particles = 200;
  opts.generations = 3;

  const PmcEstimate est1 =
      pmc_point_estimate(subset, model, spec, 1, RngStream(11), opts);
  CHECK(est1.n_simulations > 0);
  CHECK(std::fabs(est1.estimate[0] - mean) < 1.0);

  const PmcEstimate est3 =
      pmc_point_estimate(subset, model, spec, 3, RngStream(12), opts);
  CHECK(est3.n_simulations > est1.n_simulations);
  // three tempering generations concentrate near the subset mean
  CHECK(std::fabs(est3.estimate[0] - mean) < 0.6);
}

TEST_CASE("initial: named estimators") {
  const Dataset x = {1.0, 2.0, 9.0};
  RngStream rng(13);

  const PointEstimator med = make_point_estimator("median");
  const ParamVector m = med(x, rng.substream(1));
  REQUIRE(m.size() == 1);
  CHECK(m[0] == doctest::Approx(2.0));

  const PointEstimator mm = make_point_estimator("median_mad");
  const ParamVector v = mm(x, rng.substream(2));
  REQUIRE(v.size() == 2);
  CHECK(v[0] == doctest::Approx(2.0));
  CHECK(v[1] == doctest::Approx(1.0));

  const PointEstimator madest = make_point_estimator("mad");
  CHECK(madest(x, rng.substream(3))[0] == doctest::Approx(1.0));

  CHECK_THROWS_AS(make_point_estimator("bogus"), DomainError);
  // pmc without its context is rejected
  CHECK_THROWS_AS(make_point_estimator("pmc"), DomainError);
}
