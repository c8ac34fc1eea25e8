#include "acdc/summaries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace acdc {

namespace {

void check_nonempty(const Dataset& data, const char* who) {
  if (data.empty()) throw DomainError(std::string(who) + ": empty dataset");
}

double mean_of(const Dataset& data) {
  return std::accumulate(data.begin(), data.end(), 0.0) /
         static_cast<double>(data.size());
}

double sd_of(const Dataset& data) {
  const double m = mean_of(data);
  double ss = 0.0;
  for (double v : data) ss += (v - m) * (v - m);
  const double var = ss / static_cast<double>(data.size() - 1);
  return std::sqrt(var);
}

/// Median of a scratch buffer (modified in place).
double median_inplace(Dataset& buf) {
  const std::size_t n = buf.size();
  const std::size_t mid = n / 2;
  std::nth_element(buf.begin(), buf.begin() + mid, buf.end());
  double hi = buf[mid];
  if (n % 2 == 1) return hi;
  std::nth_element(buf.begin(), buf.begin() + (mid - 1), buf.begin() + mid);
  return 0.5 * (buf[mid - 1] + hi);
}

}  // namespace

double median(const Dataset& data) {
  check_nonempty(data, "median");
  Dataset buf = data;
  return median_inplace(buf);
}

double mad(const Dataset& data) {
  check_nonempty(data, "mad");
  const double med = median(data);
  Dataset dev(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) dev[i] = std::fabs(data[i] - med);
  return median_inplace(dev);
}

SummaryVector summary_cauchy(CauchySummaryKind kind, const Dataset& data) {
  check_nonempty(data, "summary_cauchy");
  const auto need_spread = [&](double value, const char* what) {
    if (value == 0.0)
      throw DegenerateSummaryError(std::string("summary_cauchy: zero ") + what +
                                   " (all observations equal)");
    return value;
  };
  const auto need_pairs = [&] {
    if (data.size() < 2)
      throw DomainError("summary_cauchy: dispersion summaries need n >= 2");
  };
  SummaryVector s;
  switch (kind) {
    case CauchySummaryKind::kMedian:
      s.resize(1);
      s[0] = median(data);
      break;
    case CauchySummaryKind::kMean:
      s.resize(1);
      s[0] = mean_of(data);
      break;
    case CauchySummaryKind::kMad:
      need_pairs();
      s.resize(1);
      s[0] = need_spread(mad(data), "MAD");
      break;
    case CauchySummaryKind::kSd:
      need_pairs();
      s.resize(1);
      s[0] = need_spread(sd_of(data), "SD");
      break;
    case CauchySummaryKind::kMeanSd:
      need_pairs();
      s.resize(2);
      s[0] = mean_of(data);
      s[1] = need_spread(sd_of(data), "SD");
      break;
    case CauchySummaryKind::kMedianMad:
      need_pairs();
      s.resize(2);
      s[0] = median(data);
      s[1] = need_spread(mad(data), "MAD");
      break;
  }
  return s;
}

SummaryVector summary_ricker(const Dataset& data) {
  const int T = static_cast<int>(data.size());
  if (T < 10) throw DomainError("summary_ricker: series must have length >= 10");

  SummaryVector s(13);
  const double ybar = mean_of(data);
  s[0] = ybar;
  s[1] = static_cast<double>(std::count(data.begin(), data.end(), 0.0));

  // Autocovariances at lags 0..5 with 1/T divisor.
  for (int lag = 0; lag <= 5; ++lag) {
    double acc = 0.0;
    for (int t = 0; t + lag < T; ++t)
      acc += (data[t] - ybar) * (data[t + lag] - ybar);
    s[2 + lag] = acc / static_cast<double>(T);
  }

  // Cubic regression of sorted first differences on their ranks.  The
  // intercept is fitted but dropped, leaving the rank, rank^2, rank^3
  // slopes.  Ranks are centered/scaled only through the polynomial itself.
  {
    Dataset diffs(static_cast<std::size_t>(T - 1));
    for (int t = 0; t + 1 < T; ++t) diffs[t] = data[t + 1] - data[t];
    std::sort(diffs.begin(), diffs.end());
    const int m = T - 1;
    Eigen::MatrixXd X(m, 4);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
      const double rank = static_cast<double>(i + 1);
      X(i, 0) = 1.0;
      X(i, 1) = rank;
      X(i, 2) = rank * rank;
      X(i, 3) = rank * rank * rank;
      y[i] = diffs[static_cast<std::size_t>(i)];
    }
    // Minimum-norm solve keeps degenerate series (all diffs equal) finite.
    Eigen::VectorXd beta = X.completeOrthogonalDecomposition().solve(y);
    s[8] = beta[1];
    s[9] = beta[2];
    s[10] = beta[3];
  }

  // Autoregression of y_{t+1}^0.3 on (y_t^0.3, y_t^0.6), no intercept.
  {
    const int m = T - 1;
    Eigen::MatrixXd X(m, 2);
    Eigen::VectorXd y(m);
    for (int t = 0; t < m; ++t) {
      const double p3 = std::pow(data[t], 0.3);
      X(t, 0) = p3;
      X(t, 1) = p3 * p3;  // y^0.6
      y[t] = std::pow(data[t + 1], 0.3);
    }
    Eigen::VectorXd beta = X.completeOrthogonalDecomposition().solve(y);
    s[11] = beta[0];
    s[12] = beta[1];
  }

  for (int j = 0; j < s.size(); ++j) {
    if (!std::isfinite(s[j]))
      throw DomainError("summary_ricker: non-finite summary entry");
  }
  return s;
}

SummaryVector summary_mean(const Dataset& data) {
  check_nonempty(data, "summary_mean");
  SummaryVector s(1);
  s[0] = mean_of(data);
  return s;
}

SummarySpec summary_spec(const std::string& name) {
  if (name == "median" || name == "mean" || name == "mad" || name == "sd")
    return {name, 1};
  if (name == "mean_sd" || name == "median_mad") return {name, 2};
  if (name == "ricker13") return {name, 13};
  throw DomainError("summary_spec: unknown summary '" + name + "'");
}

SummaryVector apply_summary(const std::string& name, const Dataset& data) {
  if (name == "median") return summary_cauchy(CauchySummaryKind::kMedian, data);
  if (name == "mean") return summary_cauchy(CauchySummaryKind::kMean, data);
  if (name == "mad") return summary_cauchy(CauchySummaryKind::kMad, data);
  if (name == "sd") return summary_cauchy(CauchySummaryKind::kSd, data);
  if (name == "mean_sd") return summary_cauchy(CauchySummaryKind::kMeanSd, data);
  if (name == "median_mad")
    return summary_cauchy(CauchySummaryKind::kMedianMad, data);
  if (name == "ricker13") return summary_ricker(data);
  throw DomainError("apply_summary: unknown summary '" + name + "'");
}

}  // namespace acdc
