#include "acdc/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "acdc/summaries.hpp"

namespace acdc {

namespace {

constexpr double kScaleFloor = 1e-8;

void check_spec(const KernelSpec& spec) {
  if (!(spec.epsilon > 0.0))
    throw DomainError("kernel_weight: epsilon must be > 0");
}

/// Sort order used everywhere a distance quantile is taken: by distance,
/// ties by ascending simulation index.
std::vector<DistanceRecord> sorted_by_distance(
    std::vector<DistanceRecord> recs) {
  std::sort(recs.begin(), recs.end(),
            [](const DistanceRecord& a, const DistanceRecord& b) {
              if (a.distance != b.distance) return a.distance < b.distance;
              return a.index < b.index;
            });
  return recs;
}

std::size_t proportion_count(std::size_t n, double proportion) {
  if (!(proportion > 0.0) || proportion > 1.0)
    throw DomainError("tolerance_from_proportion: proportion must be in (0,1]");
  const auto k = static_cast<std::size_t>(
      std::ceil(proportion * static_cast<double>(n)));
  return std::max<std::size_t>(1, std::min(k, n));
}

}  // namespace

double lambda_distance(const SummaryVector& s, const SummaryVector& s_obs,
                       const std::vector<double>& lambda_scale) {
  if (s.size() != s_obs.size() ||
      static_cast<std::size_t>(s.size()) != lambda_scale.size())
    throw DomainError("lambda_distance: dimension mismatch");
  double acc = 0.0;
  for (int j = 0; j < s.size(); ++j) {
    if (!(lambda_scale[static_cast<std::size_t>(j)] > 0.0))
      throw DomainError("lambda_distance: lambda_scale must be positive");
    const double u = (s[j] - s_obs[j]) / lambda_scale[static_cast<std::size_t>(j)];
    acc += u * u;
  }
  return std::sqrt(acc);
}

double kernel_weight(const KernelSpec& spec, double distance) {
  check_spec(spec);
  if (!(distance >= 0.0))
    throw DomainError("kernel_weight: distance must be >= 0");
  switch (spec.kind) {
    case KernelKind::kUniform:
      return distance <= spec.epsilon ? 1.0 : 0.0;
    case KernelKind::kGaussian:
      return std::exp(-distance * distance / (2.0 * spec.epsilon * spec.epsilon));
  }
  throw DomainError("kernel_weight: unknown kernel kind");
}

std::vector<double> standardize_scales(
    const std::vector<SummaryVector>& pilot_summaries) {
  if (pilot_summaries.size() < 20)
    throw DomainError("standardize_scales: need at least 20 pilot summaries");
  const int d = static_cast<int>(pilot_summaries.front().size());
  for (const auto& s : pilot_summaries) {
    if (s.size() != d)
      throw DomainError("standardize_scales: inconsistent summary dimensions");
  }
  std::vector<double> scales(static_cast<std::size_t>(d));
  Dataset coord(pilot_summaries.size());
  for (int j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < pilot_summaries.size(); ++i)
      coord[i] = pilot_summaries[i][j];
    scales[static_cast<std::size_t>(j)] = std::max(mad(coord), kScaleFloor);
  }
  return scales;
}

double tolerance_from_proportion(const std::vector<DistanceRecord>& distances,
                                 double proportion) {
  if (distances.empty())
    throw DomainError("tolerance_from_proportion: empty distance list");
  const std::size_t k = proportion_count(distances.size(), proportion);
  auto sorted = sorted_by_distance(distances);
  return sorted[k - 1].distance;
}

std::vector<long> accepted_by_proportion(
    const std::vector<DistanceRecord>& distances, double proportion) {
  if (distances.empty())
    throw DomainError("accepted_by_proportion: empty distance list");
  const std::size_t k = proportion_count(distances.size(), proportion);
  auto sorted = sorted_by_distance(distances);
  std::vector<long> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = sorted[i].index;
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace acdc
