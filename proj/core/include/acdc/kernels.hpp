#pragma once

#include <vector>

#include "acdc/types.hpp"

namespace acdc {

enum class KernelKind { kUniform, kGaussian };

/// Acceptance kernel: kind, tolerance, and the per-coordinate standardization
/// that defines the distance ||s - s_obs||_Lambda.  Both kinds are
/// max-normalized so kernel_weight(0) = 1 and "accept with probability
/// kernel_weight" is well-defined.
struct KernelSpec {
  KernelKind kind = KernelKind::kUniform;
  double epsilon = 1.0;
  std::vector<double> lambda_scale;  // positive, length d
};

struct DistanceRecord {
  long index = 0;
  double distance = 0.0;
};

/// sqrt(sum_j ((s_j - s_obs_j)/lambda_j)^2).
double lambda_distance(const SummaryVector& s, const SummaryVector& s_obs,
                       const std::vector<double>& lambda_scale);

/// Uniform: 1{distance <= epsilon}.  Gaussian: exp(-distance^2 / (2 eps^2)).
double kernel_weight(const KernelSpec& spec, double distance);

/// Per-coordinate MAD of >= 20 pilot summaries, floored at 1e-8; the result
/// is the lambda_scale of a KernelSpec.
std::vector<double> standardize_scales(
    const std::vector<SummaryVector>& pilot_summaries);

/// The ceil(proportion * N)-th smallest distance; ties at the boundary are
/// broken by ascending simulation index, so pairing the returned tolerance
/// with the uniform kernel accepts exactly ceil(proportion * N) draws.
double tolerance_from_proportion(const std::vector<DistanceRecord>& distances,
                                 double proportion);

/// Indices accepted by the proportion rule, in ascending simulation index;
/// exactly ceil(proportion * N) of them.
std::vector<long> accepted_by_proportion(
    const std::vector<DistanceRecord>& distances, double proportion);

}  // namespace acdc
