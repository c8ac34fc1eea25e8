#pragma once

#include <vector>

#include "acdc/samplers.hpp"
#include "acdc/types.hpp"

namespace acdc {

enum class RegionKind { kIntervalBox, kDepthContour };

/// A confidence region: either a per-coordinate interval box or a
/// Mahalanobis-depth contour {theta : depth(theta) >= depth_threshold} with
/// depth(theta) = 1 / (1 + (theta-center)' scatter^{-1} (theta-center)).
struct ConfidenceRegion {
  RegionKind kind = RegionKind::kIntervalBox;
  double level = 0.95;
  // interval_box
  std::vector<std::pair<double, double>> intervals;
  // depth_contour
  double depth_threshold = 0.0;
  ParamVector center;
  Eigen::MatrixXd scatter;
  /// Interval width (sum over coordinates... single coordinate for marginal
  /// regions) or ellipsoid volume for depth contours.
  double size = 0.0;
  /// Set when the effective sample size behind the region is below 10.
  bool unstable = false;
};

/// Weighted empirical quantiles of one theta coordinate at
/// (1 - level)/2 and 1 - (1 - level)/2, by the interpolated weighted-ECDF
/// rule (equal-weight draws {1..100} at level 0.90 give [5.05, 95.95]).
ConfidenceRegion confidence_interval(const CDSample& sample, int coord,
                                     double level);

/// Depth-contour region from weighted mean/covariance; the threshold is the
/// weighted (1 - level)-quantile of the draw depths, ties broken toward
/// inclusion; size is the volume of the ellipsoid
/// {(theta-mu)' Sigma^{-1} (theta-mu) <= 1/threshold - 1}.
ConfidenceRegion depth_region(const CDSample& sample, double level);

bool region_contains(const ConfidenceRegion& region, const ParamVector& theta0);

/// Mahalanobis depth of theta0 under the region's center/scatter.
double region_depth(const ConfidenceRegion& region, const ParamVector& theta0);

/// H_n(t) = 1 - Q_eps(2 theta_hat - t | s_obs): the weighted proportion of
/// draws with theta_i >= 2 theta_hat - t, theta_hat the weighted mean of the
/// coordinate.  The reflected ECDF realizing the CD claim.
double cd_value_at(const CDSample& sample, int coord, double t);

struct PitResult {
  double ks = 0.0;
  double critical = 0.0;  // 1.628 / sqrt(R), the 1% KS critical value
  bool pass = false;
  int n = 0;
};

/// One-sample KS test of replicate PIT values against Uniform(0,1) at the
/// 1% level.  Requires >= 100 values, all within [0,1].
PitResult pit_uniformity(const std::vector<double>& replicate_pits);

}  // namespace acdc
