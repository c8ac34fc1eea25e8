#include <doctest.h>

#include <cmath>

#include "acdc/oracle_normal.hpp"
#include "oracle_helpers.hpp"

using namespace acdc;

TEST_CASE("oracle: closed-form moments match independent quadrature values") {
  // Frozen against scipy.integrate.dblquad of
  //   integral theta * r_n(theta) N(s; theta, 1/n) K_eps(s - s_obs) ds dtheta
  // over the normalizer, at (n, mu_n, b_n, eps, s_obs) = (100, 0, 1, 0.1, 0.2):
  // mean = 10/51, variance = 1/51.
  OracleNormalSpec spec;
  spec.n = 100;
  spec.mu_n = 0.0;
  spec.b_n = 1.0;
  spec.epsilon = 0.1;
  spec.s_obs = 0.2;
  const OracleMoments m = closed_form_moments(spec);
  CHECK(m.mean == doctest::Approx(0.19607843137254902).epsilon(1e-12));
  CHECK(m.variance == doctest::Approx(0.019607843137254905).epsilon(1e-12));

  // Delta_n: b^2 (1/n + eps^2) = 4 (1/4 + 1/4) = 2
  OracleNormalSpec d;
  d.n = 4;
  d.b_n = 2.0;
  d.epsilon = 0.5;
  CHECK(d.delta_n() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("oracle: diagnostic-point values") {
  // the configuration used by the sampler acceptance check: n=100, mu_n=0.5,
  // b_n=100^(1/4), eps=0.05, s_obs=0.1
  OracleNormalSpec spec;
  spec.n = 100;
  spec.mu_n = 0.5;
  spec.b_n = std::pow(100.0, 0.25);
  spec.epsilon = 0.05;
  spec.s_obs = 0.1;

  const OracleMoments m = closed_form_moments(spec);
  CHECK(m.mean == doctest::Approx(13.0 / 90.0).epsilon(1e-14));
  CHECK(m.variance == doctest::Approx(1.0 / 90.0).epsilon(1e-14));
  CHECK(acceptance_rate(spec) ==
        doctest::Approx(0.07320860165310744).epsilon(1e-12));
}

TEST_CASE("oracle: cdf") {
  OracleNormalSpec spec;
  spec.n = 100;
  spec.mu_n = 0.5;
  spec.b_n = std::pow(100.0, 0.25);
  spec.epsilon = 0.05;
  spec.s_obs = 0.1;
  const OracleMoments m = closed_form_moments(spec);
  const double sd = std::sqrt(m.variance);

  CHECK(oracle_normal_cdf(spec, m.mean) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(oracle_normal_cdf(spec, m.mean + 1.959963984540054 * sd) ==
        doctest::Approx(0.975).epsilon(1e-6));
  CHECK(oracle_normal_cdf(spec, m.mean - 1.959963984540054 * sd) ==
        doctest::Approx(0.025).epsilon(1e-6));

  double prev = -1.0;
  for (double t = m.mean - 5 * sd; t <= m.mean + 5 * sd; t += sd / 3.0) {
    const double c = oracle_normal_cdf(spec, t);
    CHECK(c >= prev);
    prev = c;
  }

  // cross-check against the helper normal cdf
  CHECK(oracle_normal_cdf(spec, 0.2) ==
        doctest::Approx(test_oracle::normal_cdf((0.2 - m.mean) / sd))
            .epsilon(1e-12));
}

TEST_CASE("oracle: acceptance-rate curve") {
  OracleNormalRules rules;
  rules.epsilon = [](int n) { return 0.5 * 100.0 / n; };  // eps ~ 1/n

  const std::vector<int> grid{100, 200, 500, 1000, 5000, 10000};
  const auto curve = acceptance_rate_curve(rules, grid);
  REQUIRE(curve.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(curve[i].first == grid[i]);
    // matches the pointwise evaluation
    OracleNormalSpec spec;
    spec.n = grid[i];
    spec.epsilon = rules.epsilon(grid[i]);
    spec.b_n = std::pow(static_cast<double>(grid[i]), 0.25);
    spec.mu_n = 0.0 + 1.0 / spec.b_n;
    spec.s_obs = 0.0;
    CHECK(curve[i].second ==
          doctest::Approx(acceptance_rate(spec)).epsilon(1e-12));
  }
  // degeneracy: the fast-shrinking tolerance drives the rate down
  for (std::size_t i = 1; i < curve.size(); ++i)
    CHECK(curve[i].second <= curve[i - 1].second + 1e-15);
  CHECK(curve.back().second < curve.front().second);
}
