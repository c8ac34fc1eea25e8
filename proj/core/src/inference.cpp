#include "acdc/inference.hpp"

#include <algorithm>
#include <cmath>

#include "acdc/stats.hpp"

namespace acdc {

namespace {

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0))
    throw DomainError("inference: level must be in (0,1)");
}

std::vector<Eigen::VectorXd> draw_thetas(const CDSample& sample) {
  std::vector<Eigen::VectorXd> thetas(sample.draws.size());
  for (std::size_t i = 0; i < sample.draws.size(); ++i)
    thetas[i] = sample.draws[i].theta;
  return thetas;
}

double unit_ball_volume(int p) {
  return std::pow(M_PI, 0.5 * p) / std::tgamma(0.5 * p + 1.0);
}

}  // namespace

ConfidenceRegion confidence_interval(const CDSample& sample, int coord,
                                     double level) {
  check_level(level);
  if (sample.draws.empty())
    throw DomainError("confidence_interval: empty sample");
  const int p = static_cast<int>(sample.draws.front().theta.size());
  if (coord < 0 || coord >= p)
    throw DomainError("confidence_interval: coordinate out of range");

  std::vector<double> values(sample.draws.size());
  for (std::size_t i = 0; i < sample.draws.size(); ++i)
    values[i] = sample.draws[i].theta[coord];
  const std::vector<double> weights = sample.weights();

  const double alpha = 1.0 - level;
  ConfidenceRegion region;
  region.kind = RegionKind::kIntervalBox;
  region.level = level;
  const double lo = weighted_quantile(values, weights, 0.5 * alpha);
  const double hi = weighted_quantile(values, weights, 1.0 - 0.5 * alpha);
  region.intervals.emplace_back(lo, hi);
  region.size = hi - lo;
  region.unstable = ess_of_weights(weights) < 10.0;
  return region;
}

ConfidenceRegion depth_region(const CDSample& sample, double level) {
  check_level(level);
  if (sample.draws.empty()) throw DomainError("depth_region: empty sample");
  const int p = static_cast<int>(sample.draws.front().theta.size());
  if (p < 2) throw DomainError("depth_region: needs p >= 2 (use intervals)");
  const std::vector<double> weights = sample.weights();
  if (ess_of_weights(weights) < 20.0)
    throw DomainError("depth_region: fewer than 20 effective draws");

  const auto thetas = draw_thetas(sample);
  ConfidenceRegion region;
  region.kind = RegionKind::kDepthContour;
  region.level = level;
  region.center = weighted_mean(thetas, weights);
  region.scatter = weighted_covariance(thetas, weights);

  Eigen::LLT<Eigen::MatrixXd> llt(region.scatter);
  if (llt.info() != Eigen::Success)
    throw DomainError("depth_region: singular weighted covariance");
  // exactly rank-deficient scatters can slip past LLT on a roundoff-sized
  // pivot; refuse condition numbers past ~1e12
  double min_l = std::numeric_limits<double>::infinity();
  double max_l = 0.0;
  for (int j = 0; j < p; ++j) {
    min_l = std::min(min_l, llt.matrixL()(j, j));
    max_l = std::max(max_l, llt.matrixL()(j, j));
  }
  if (!(min_l > 0.0) || min_l < 1e-6 * max_l)
    throw DomainError("depth_region: singular weighted covariance");

  std::vector<double> depths(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const Eigen::VectorXd z = llt.matrixL().solve(thetas[i] - region.center);
    depths[i] = 1.0 / (1.0 + z.squaredNorm());
  }
  region.depth_threshold = weighted_quantile(depths, weights, 1.0 - level);

  // Ellipsoid {q(theta) <= 1/t - 1} has volume V_p * (1/t - 1)^{p/2} *
  // sqrt(det Sigma).
  const double c = 1.0 / region.depth_threshold - 1.0;
  double log_det = 0.0;
  for (int j = 0; j < p; ++j) log_det += 2.0 * std::log(llt.matrixL()(j, j));
  region.size = unit_ball_volume(p) * std::pow(c, 0.5 * p) *
                std::exp(0.5 * log_det);
  region.unstable = ess_of_weights(weights) < 10.0;
  return region;
}

double region_depth(const ConfidenceRegion& region, const ParamVector& theta0) {
  if (region.kind != RegionKind::kDepthContour)
    throw DomainError("region_depth: not a depth region");
  if (theta0.size() != region.center.size())
    throw DomainError("region_depth: dimension mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt(region.scatter);
  if (llt.info() != Eigen::Success)
    throw DomainError("region_depth: singular scatter");
  const Eigen::VectorXd z = llt.matrixL().solve(theta0 - region.center);
  return 1.0 / (1.0 + z.squaredNorm());
}

bool region_contains(const ConfidenceRegion& region, const ParamVector& theta0) {
  switch (region.kind) {
    case RegionKind::kIntervalBox: {
      if (theta0.size() != static_cast<int>(region.intervals.size()))
        throw DomainError("region_contains: dimension mismatch");
      for (int j = 0; j < theta0.size(); ++j) {
        const auto& [lo, hi] = region.intervals[static_cast<std::size_t>(j)];
        if (!(theta0[j] >= lo && theta0[j] <= hi)) return false;
      }
      return true;
    }
    case RegionKind::kDepthContour:
      return region_depth(region, theta0) >= region.depth_threshold;
  }
  throw DomainError("region_contains: unknown region kind");
}

double cd_value_at(const CDSample& sample, int coord, double t) {
  if (sample.draws.empty()) throw DomainError("cd_value_at: empty sample");
  const int p = static_cast<int>(sample.draws.front().theta.size());
  if (coord < 0 || coord >= p)
    throw DomainError("cd_value_at: coordinate out of range");

  double total = 0.0;
  double theta_hat = 0.0;
  for (const auto& draw : sample.draws) {
    const double w = draw.weight();
    total += w;
    theta_hat += w * draw.theta[coord];
  }
  if (!(total > 0.0)) throw DomainError("cd_value_at: zero total weight");
  theta_hat /= total;

  const double reflect = 2.0 * theta_hat - t;
  double mass = 0.0;
  for (const auto& draw : sample.draws) {
    if (draw.theta[coord] >= reflect) mass += draw.weight();
  }
  return mass / total;
}

PitResult pit_uniformity(const std::vector<double>& replicate_pits) {
  if (replicate_pits.size() < 100)
    throw DomainError("pit_uniformity: need at least 100 replicates");
  for (double u : replicate_pits) {
    if (!(u >= 0.0 && u <= 1.0))
      throw DomainError("pit_uniformity: PIT value outside [0,1]");
  }
  PitResult result;
  result.n = static_cast<int>(replicate_pits.size());
  result.ks = ks_distance_uniform(replicate_pits);
  result.critical = 1.628 / std::sqrt(static_cast<double>(result.n));
  result.pass = result.ks < result.critical;
  return result;
}

}  // namespace acdc
