#include "acdc/oracle_normal.hpp"

#include <cmath>

namespace acdc {

namespace {

void check_spec(const OracleNormalSpec& spec) {
  if (spec.n < 1) throw DomainError("OracleNormalSpec: n must be >= 1");
  if (!(spec.b_n > 0.0)) throw DomainError("OracleNormalSpec: b_n must be > 0");
  if (!(spec.epsilon > 0.0))
    throw DomainError("OracleNormalSpec: epsilon must be > 0");
}

}  // namespace

double OracleNormalSpec::delta_n() const {
  return b_n * b_n * (1.0 / static_cast<double>(n) + epsilon * epsilon);
}

OracleMoments closed_form_moments(const OracleNormalSpec& spec) {
  check_spec(spec);
  const double delta = spec.delta_n();
  const double tau2 = 1.0 / static_cast<double>(spec.n) +
                      spec.epsilon * spec.epsilon;  // widened likelihood var
  OracleMoments m;
  m.variance = delta / (spec.b_n * spec.b_n * (1.0 + delta));
  m.mean = (spec.mu_n * spec.b_n * spec.b_n + spec.s_obs / tau2) /
           (spec.b_n * spec.b_n + 1.0 / tau2);
  return m;
}

double oracle_normal_cdf(const OracleNormalSpec& spec, double t) {
  const OracleMoments m = closed_form_moments(spec);
  const double z = (t - m.mean) / std::sqrt(m.variance);
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double acceptance_rate(const OracleNormalSpec& spec) {
  check_spec(spec);
  const double v2 =
      1.0 / (spec.b_n * spec.b_n) + 1.0 / static_cast<double>(spec.n);
  const double total = v2 + spec.epsilon * spec.epsilon;
  const double gap = spec.mu_n - spec.s_obs;
  return spec.epsilon / std::sqrt(total) * std::exp(-gap * gap / (2.0 * total));
}

std::vector<std::pair<int, double>> acceptance_rate_curve(
    const OracleNormalRules& rules, const std::vector<int>& n_grid) {
  if (n_grid.empty())
    throw DomainError("acceptance_rate_curve: empty n grid");
  if (!rules.epsilon)
    throw DomainError("acceptance_rate_curve: epsilon rule required");
  std::vector<std::pair<int, double>> curve;
  curve.reserve(n_grid.size());
  for (int n : n_grid) {
    OracleNormalSpec spec;
    spec.n = n;
    spec.b_n = rules.b_n(n);
    spec.mu_n = rules.mu_n ? rules.mu_n(n) : rules.s_obs + 1.0 / spec.b_n;
    spec.epsilon = rules.epsilon(n);
    spec.s_obs = rules.s_obs;
    curve.emplace_back(n, acceptance_rate(spec));
  }
  return curve;
}

}  // namespace acdc
