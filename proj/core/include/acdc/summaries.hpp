#pragma once

#include <string>

#include "acdc/types.hpp"

namespace acdc {

/// Name + output dimension of a registered summary function.
struct SummarySpec {
  std::string name;
  int dim = 0;
};

enum class CauchySummaryKind { kMedian, kMean, kMad, kSd, kMeanSd, kMedianMad };

/// The summary statistics used by the five Cauchy settings.  MAD is the
/// unscaled median absolute deviation about the median; paired kinds return
/// length-2 vectors in the listed order.  Zero dispersion for mad/sd is a
/// DegenerateSummaryError: all-equal observations from a continuous model
/// signal an upstream bug, not a valid summary of 0.
SummaryVector summary_cauchy(CauchySummaryKind kind, const Dataset& data);

/// Fixed 13-dimensional summary of an integer-valued series (length >= 10):
///   [0]     mean
///   [1]     number of zeros
///   [2..7]  autocovariances at lags 0..5, divisor 1/T
///   [8..10] cubic-regression coefficients (rank, rank^2, rank^3 slopes,
///           intercept dropped) of the first differences sorted ascending
///           against their ranks
///   [11,12] least-squares coefficients of y_{t+1}^0.3 on (y_t^0.3, y_t^0.6),
///           no intercept
SummaryVector summary_ricker(const Dataset& data);

/// Arithmetic mean as a 1-vector.
SummaryVector summary_mean(const Dataset& data);

/// Median / unscaled MAD helpers shared across modules.
double median(const Dataset& data);
double mad(const Dataset& data);

/// Look up a summary by its config name: "median", "mean", "mad", "sd",
/// "mean_sd", "median_mad", "ricker13".  Throws DomainError for unknown
/// names.
SummarySpec summary_spec(const std::string& name);
SummaryVector apply_summary(const std::string& name, const Dataset& data);

/// Degenerate dispersion (all observations equal where a spread is needed).
struct DegenerateSummaryError : AcdcError {
  using AcdcError::AcdcError;
};

}  // namespace acdc
