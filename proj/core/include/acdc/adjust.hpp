#pragma once

#include "acdc/samplers.hpp"
#include "acdc/types.hpp"

namespace acdc {

/// Weighted least-squares fit of theta on the centered summaries
/// (s - s_obs) with intercept: the minimizer of
/// sum_i w_i ||theta_i - alpha - beta (s_i - s_obs)||^2.
struct RegressionFit {
  ParamVector alpha;      // p
  Eigen::MatrixXd beta;   // p x d
  bool weighted = false;  // any non-uniform weights present
};

/// Fits the regression with weights w_i = kernel_weight * importance_weight.
/// Requires at least d + 2 accepted draws and a full-column-rank weighted
/// design (rank-revealing QR, relative pivot threshold 1e-10); otherwise
/// throws SingularDesignError — callers may fall back to the unadjusted
/// sample and record the fallback.
RegressionFit fit_regression(const CDSample& sample);

/// theta*_i = theta_i - beta (s_i - s_obs); weights untouched, adjusted flag
/// set.  Summaries are kept so the fit can be re-run (idempotence checks).
CDSample apply_adjustment(const CDSample& sample, const RegressionFit& fit);

}  // namespace acdc
