#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "acdc/types.hpp"

namespace acdc {

/// All-Gaussian diagnostic model: x ~ N(theta, 1) iid (n draws, summary the
/// sample mean), r_n = N(mu_n, b_n^{-2}), gaussian kernel with tolerance
/// epsilon.  Everything downstream of these five numbers is closed form.
struct OracleNormalSpec {
  int n = 100;
  double mu_n = 0.0;
  double b_n = 1.0;
  double epsilon = 0.1;
  double s_obs = 0.0;

  /// Delta_n = b_n^2 (1/n + eps^2) > 0.
  double delta_n() const;
};

/// Exact mean and variance of Q_eps(theta | s_obs):
///   variance = b_n^{-2} Delta_n / (1 + Delta_n)
///   mean     = (mu_n b_n^2 + s_obs / (1/n + eps^2)) /
///              (b_n^2 + 1 / (1/n + eps^2))
/// i.e. the precision-weighted Gaussian conjugate update with the kernel
/// width added to the sampling variance of the mean.
struct OracleMoments {
  double mean = 0.0;
  double variance = 0.0;
};
OracleMoments closed_form_moments(const OracleNormalSpec& spec);

/// CDF of the closed-form Q_eps at t (for KS checks against sampler output).
double oracle_normal_cdf(const OracleNormalSpec& spec, double t);

/// Exact marginal acceptance probability of the gaussian-kernel sampler,
/// normalized by the kernel mode:
///   E exp(-(s - s_obs)^2 / (2 eps^2)),  s ~ N(mu_n, b_n^{-2} + 1/n)
/// = eps / sqrt(v^2 + eps^2) * exp(-(mu_n - s_obs)^2 / (2 (v^2 + eps^2))).
double acceptance_rate(const OracleNormalSpec& spec);

/// How the diagnostic spec varies along an n-grid.  Defaults realize the
/// standing choices b_n = n^{1/4}, mu_n = theta0 + 1/b_n, s_obs = theta0 = 0.
struct OracleNormalRules {
  std::function<double(int)> epsilon;  // required: n -> eps(n)
  std::function<double(int)> b_n = [](int n) {
    return std::pow(static_cast<double>(n), 0.25);
  };
  std::function<double(int)> mu_n;  // default: s_obs + 1/b_n(n)
  double s_obs = 0.0;
};

/// Analytic acceptance-rate degeneracy curve over an n-grid.
std::vector<std::pair<int, double>> acceptance_rate_curve(
    const OracleNormalRules& rules, const std::vector<int>& n_grid);

}  // namespace acdc
