#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "acdc/types.hpp"

namespace acdc {

/// log(sum(exp(v))) without overflow; -inf for empty or all -inf input.
inline double logsumexp(const std::vector<double>& v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - mx);
  return mx + std::log(acc);
}

/// Weighted quantile by linear interpolation of the weighted ECDF.
/// Plotting positions are p_i = c_i * m/(m+1) with c_i the cumulative
/// normalized weight, which reduces to the (m+1)p rule for equal weights:
/// equal-weight draws {1..100} at levels 0.05/0.95 give 5.05 and 95.95.
/// Queries below p_1 (above p_m) return the smallest (largest) value.
inline double weighted_quantile(std::vector<double> values,
                                std::vector<double> weights, double p) {
  if (values.empty() || values.size() != weights.size())
    throw DomainError("weighted_quantile: empty or mismatched input");
  if (!(p >= 0.0 && p <= 1.0))
    throw DomainError("weighted_quantile: p must be in [0,1]");
  const std::size_t m = values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("weighted_quantile: negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("weighted_quantile: zero total weight");

  const double scale = static_cast<double>(m) / static_cast<double>(m + 1);
  double cum = 0.0;
  double prev_pos = -1.0;
  double prev_val = values[order[0]];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t i = order[r];
    cum += weights[i] / total;
    const double pos = cum * scale;
    const double val = values[i];
    if (r == 0 && p <= pos) return val;
    if (p <= pos) {
      if (pos == prev_pos) return val;
      const double t = (p - prev_pos) / (pos - prev_pos);
      return prev_val + t * (val - prev_val);
    }
    prev_pos = pos;
    prev_val = val;
  }
  return values[order[m - 1]];
}

/// Weighted mean of a set of vectors; weights need not be normalized.
inline Eigen::VectorXd weighted_mean(const std::vector<Eigen::VectorXd>& xs,
                                     const std::vector<double>& weights) {
  if (xs.empty() || xs.size() != weights.size())
    throw DomainError("weighted_mean: empty or mismatched input");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(xs.front().size());
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    acc += weights[i] * xs[i];
    total += weights[i];
  }
  if (!(total > 0.0)) throw DomainError("weighted_mean: zero total weight");
  return acc / total;
}

/// Weighted covariance about the weighted mean (normalized weights, no
/// small-sample correction).
inline Eigen::MatrixXd weighted_covariance(
    const std::vector<Eigen::VectorXd>& xs, const std::vector<double>& weights) {
  const Eigen::VectorXd mu = weighted_mean(xs, weights);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(mu.size(), mu.size());
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Eigen::VectorXd d = xs[i] - mu;
    acc += weights[i] * (d * d.transpose());
    total += weights[i];
  }
  return acc / total;
}

/// (sum w)^2 / sum w^2; m for equal weights, 1 for a point mass.
inline double ess_of_weights(const std::vector<double>& weights) {
  double s1 = 0.0, s2 = 0.0;
  for (double w : weights) {
    s1 += w;
    s2 += w * w;
  }
  if (!(s2 > 0.0)) throw DomainError("ess_of_weights: all weights zero");
  return s1 * s1 / s2;
}

/// One-sample Kolmogorov-Smirnov distance of `values` to the uniform CDF on
/// [0,1]: sup_u |ECDF(u) - u|.
inline double ks_distance_uniform(std::vector<double> values) {
  if (values.empty()) throw DomainError("ks_distance_uniform: empty input");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double u = values[i];
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - u);
    d = std::max(d, u - static_cast<double>(i) / n);
  }
  return d;
}

}  // namespace acdc
