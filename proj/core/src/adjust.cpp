#include "acdc/adjust.hpp"

#include <cmath>

namespace acdc {

RegressionFit fit_regression(const CDSample& sample) {
  const auto m = static_cast<long>(sample.draws.size());
  if (m == 0) throw DomainError("fit_regression: empty sample");
  const int p = static_cast<int>(sample.draws.front().theta.size());
  const int d = static_cast<int>(sample.s_obs.size());
  if (m < d + 2)
    throw SingularDesignError("fit_regression: need at least d + 2 draws");

  // Weighted design: rows sqrt(w_i) * [1, (s_i - s_obs)'], response
  // sqrt(w_i) * theta_i'.
  Eigen::MatrixXd X(m, d + 1);
  Eigen::MatrixXd Y(m, p);
  bool weighted = false;
  double w0 = -1.0;
  for (long i = 0; i < m; ++i) {
    const AcceptedDraw& draw = sample.draws[static_cast<std::size_t>(i)];
    const double w = draw.weight();
    if (!(w >= 0.0)) throw DomainError("fit_regression: negative weight");
    if (w0 < 0.0) w0 = w;
    if (w != w0) weighted = true;
    const double sw = std::sqrt(w);
    X(i, 0) = sw;
    for (int j = 0; j < d; ++j)
      X(i, j + 1) = sw * (draw.summary[j] - sample.s_obs[j]);
    for (int q = 0; q < p; ++q) Y(i, q) = sw * draw.theta[q];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < d + 1)
    throw SingularDesignError("fit_regression: rank-deficient design matrix");

  const Eigen::MatrixXd coef = qr.solve(Y);  // (d+1) x p
  RegressionFit fit;
  fit.alpha = coef.row(0).transpose();
  fit.beta = coef.bottomRows(d).transpose();  // p x d
  fit.weighted = weighted;
  return fit;
}

CDSample apply_adjustment(const CDSample& sample, const RegressionFit& fit) {
  if (sample.draws.empty()) throw DomainError("apply_adjustment: empty sample");
  const int p = static_cast<int>(sample.draws.front().theta.size());
  const int d = static_cast<int>(sample.s_obs.size());
  if (fit.beta.rows() != p || fit.beta.cols() != d || fit.alpha.size() != p)
    throw DomainError("apply_adjustment: fit dimensions do not match sample");

  CDSample out = sample;
  for (auto& draw : out.draws)
    draw.theta -= fit.beta * (draw.summary - sample.s_obs);
  out.adjusted = true;
  return out;
}

}  // namespace acdc
