#include <doctest.h>

#include <cmath>
#include <vector>

#include "acdc/inference.hpp"
#include "acdc/rng.hpp"
#include "acdc/samplers.hpp"
#include "acdc/types.hpp"

using namespace acdc;

namespace {
CDSample equal_weight_1d(const std::vector<double>& thetas) {
  CDSample s;
  s.s_obs = SummaryVector::Zero(1);
  for (double t : thetas) {
    AcceptedDraw d;
    d.theta = ParamVector(1);
    d.theta[0] = t;
    d.summary = SummaryVector::Zero(1);
    s.draws.push_back(d);
  }
  return s;
}

ParamVector pv2(double a, double b) {
  ParamVector v(2);
  v << a, b;
  return v;
}

CDSample gaussian_cloud_2d(int n, unsigned long key) {
  RngStream rng(key);
  CDSample s;
  s.s_obs = SummaryVector::Zero(2);
  for (int i = 0; i < n; ++i) {
    AcceptedDraw d;
    d.theta = pv2(rng.normal(), rng.normal());
    d.summary = SummaryVector::Zero(2);
    s.draws.push_back(d);
  }
  return s;
}
}  // namespace

TEST_CASE("inference: weighted quantile interval") {
  std::vector<double> thetas;
  for (int i = 1; i <= 100; ++i) thetas.push_back(i);
  const CDSample s = equal_weight_1d(thetas);

  const ConfidenceRegion r = confidence_interval(s, 0, 0.90);
  CHECK(r.kind == RegionKind::kIntervalBox);
  REQUIRE(r.intervals.size() == 1);
  CHECK(r.intervals[0].first == doctest::Approx(5.05));
  CHECK(r.intervals[0].second == doctest::Approx(95.95));
  CHECK(r.size == doctest::Approx(95.95 - 5.05));
  CHECK(!r.unstable);

  ParamVector in(1), out(1);
  in << 50.0;
  out << 4.0;
  CHECK(region_contains(r, in));
  CHECK(!region_contains(r, out));

  // level ~ 1 returns the full range
  const ConfidenceRegion full = confidence_interval(s, 0, 1.0 - 1e-12);
  CHECK(full.intervals[0].first == doctest::Approx(1.0));
  CHECK(full.intervals[0].second == doctest::Approx(100.0));

  // few effective draws flags instability
  CDSample spiky = equal_weight_1d({1, 2, 3, 4, 5, 6, 7, 8});
  for (std::size_t i = 1; i < spiky.draws.size(); ++i)
    spiky.draws[i].importance_weight = 1e-9;
  const ConfidenceRegion u = confidence_interval(spiky, 0, 0.9);
  CHECK(u.unstable);
}

TEST_CASE("inference: cd value convention") {
  // draws {1,2,3}: theta_hat = 2; H(t) = P(theta >= 4 - t)
  const CDSample s = equal_weight_1d({1.0, 2.0, 3.0});
  CHECK(cd_value_at(s, 0, 2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(cd_value_at(s, 0, 1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(cd_value_at(s, 0, 3.0) == doctest::Approx(1.0));
  CHECK(cd_value_at(s, 0, 0.5) == doctest::Approx(0.0));

  // weighted version: weights (1,1,2) -> theta_hat = 2.25;
  // H(2) = P(theta >= 2.5) = w{3}/4 = 0.5
  CDSample w = equal_weight_1d({1.0, 2.0, 3.0});
  w.draws[2].importance_weight = 2.0;
  CHECK(cd_value_at(w, 0, 2.0) == doctest::Approx(0.5));

  // monotone nondecreasing in t
  double prev = -1.0;
  for (double t = 0.0; t <= 4.0; t += 0.25) {
    const double h = cd_value_at(s, 0, t);
    CHECK(h >= prev - 1e-15);
    prev = h;
  }
}

TEST_CASE("inference: depth region geometry") {
  const CDSample cloud = gaussian_cloud_2d(4000, 101);
  const ConfidenceRegion r = depth_region(cloud, 0.95);
  CHECK(r.kind == RegionKind::kDepthContour);
  CHECK(r.depth_threshold > 0.0);
  CHECK(r.depth_threshold < 1.0);

  // for N(0, I) the 95% region is a disc of squared radius ~ chi2_2(0.95)
  // = 5.9915; volume pi * r^2
  const double expect_vol = M_PI * 5.991464547107979;
  CHECK(r.size == doctest::Approx(expect_vol).epsilon(0.12));
  CHECK(region_contains(r, pv2(0.0, 0.0)));
  CHECK(!region_contains(r, pv2(5.0, 5.0)));

  // the Mahalanobis depth at center is 1; at distance it decays
  CHECK(region_depth(r, r.center) == doctest::Approx(1.0).epsilon(1e-9));
  const double d11 = region_depth(r, pv2(1.0, 1.0));
  CHECK(d11 < 1.0);
  CHECK(d11 > 0.0);

  // nesting: lower level -> higher threshold -> smaller volume
  const ConfidenceRegion r90 = depth_region(cloud, 0.90);
  CHECK(r90.depth_threshold >= r.depth_threshold);
  CHECK(r90.size <= r.size);
}

TEST_CASE("inference: depth region affine equivariance") {
  const CDSample cloud = gaussian_cloud_2d(1500, 202);
  Eigen::Matrix2d A;
  A << 2.0, 1.0, 0.0, 1.0;  // det 2
  Eigen::Vector2d shift(3.0, -1.0);

  CDSample mapped = cloud;
  for (auto& d : mapped.draws) d.theta = A * d.theta + shift;

  const ConfidenceRegion r0 = depth_region(cloud, 0.95);
  const ConfidenceRegion r1 = depth_region(mapped, 0.95);

  CHECK(r1.depth_threshold == doctest::Approx(r0.depth_threshold).epsilon(1e-9));
  CHECK(r1.size == doctest::Approx(2.0 * r0.size).epsilon(1e-9));
  // depth of corresponding points is preserved
  const ParamVector probe = pv2(0.7, -0.3);
  const ParamVector mapped_probe = A * probe + shift;
  CHECK(region_depth(r1, mapped_probe) ==
        doctest::Approx(region_depth(r0, probe)).epsilon(1e-9));
  CHECK(region_contains(r0, probe) == region_contains(r1, mapped_probe));
}

TEST_CASE("inference: depth region rejects degenerate input") {
  // one-dimensional draws cannot form a 2-D depth region
  const CDSample s1 = equal_weight_1d({1, 2, 3, 4, 5});
  CHECK_THROWS_AS(depth_region(s1, 0.95), DomainError);

  // collinear draws -> singular scatter
  CDSample line;
  line.s_obs = SummaryVector::Zero(2);
  for (int i = 0; i < 200; ++i) {
    AcceptedDraw d;
    d.theta = pv2(i * 0.01, 2.0 * i * 0.01);
    d.summary = SummaryVector::Zero(2);
    line.draws.push_back(d);
  }
  CHECK_THROWS_AS(depth_region(line, 0.95), DomainError);

  // effectively fewer than 20 draws -> refuse
  CDSample few = gaussian_cloud_2d(15, 303);
  CHECK_THROWS_AS(depth_region(few, 0.95), DomainError);
}

TEST_CASE("inference: pit uniformity test") {
  std::vector<double> grid;
  for (int i = 1; i <= 500; ++i) grid.push_back(i / 501.0);
  const PitResult ok = pit_uniformity(grid);
  CHECK(ok.n == 500);
  CHECK(ok.critical == doctest::Approx(0.07280637334739315).epsilon(1e-14));
  CHECK(ok.pass);
  CHECK(ok.ks < 0.01);

  const std::vector<double> degenerate(500, 0.5);
  const PitResult bad = pit_uniformity(degenerate);
  CHECK(!bad.pass);
  CHECK(bad.ks > 0.4);

  CHECK_THROWS_AS(pit_uniformity(std::vector<double>(50, 0.5)), DomainError);
  std::vector<double> out_of_range(200, 0.5);
  out_of_range[10] = 1.5;
  CHECK_THROWS_AS(pit_uniformity(out_of_range), DomainError);
}
