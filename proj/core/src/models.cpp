#include "acdc/models.hpp"

#include <cmath>
#include <limits>

namespace acdc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRickerOverflow = 1e12;

void check_sample_size(int n, const char* who) {
  if (n <= 0) throw DomainError(std::string(who) + ": sample size must be positive");
}

}  // namespace

// ---------------------------------------------------------------------------
// Primitives
// ---------------------------------------------------------------------------

Dataset simulate_normal(int n, double mean, RngStream& rng) {
  check_sample_size(n, "simulate_normal");
  if (!std::isfinite(mean)) throw DomainError("simulate_normal: mean must be finite");
  Dataset x(static_cast<std::size_t>(n));
  for (auto& v : x) v = mean + rng.normal();
  return x;
}

Dataset simulate_cauchy(int n, double loc, double scale, RngStream& rng) {
  check_sample_size(n, "simulate_cauchy");
  if (!std::isfinite(loc)) throw DomainError("simulate_cauchy: loc must be finite");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw DomainError("simulate_cauchy: scale must be positive and finite");
  Dataset x(static_cast<std::size_t>(n));
  for (auto& v : x) v = rng.cauchy(loc, scale);
  return x;
}

Dataset simulate_ricker(const RickerParams& params, int T, int burn_in,
                        RngStream& rng) {
  check_sample_size(T, "simulate_ricker");
  if (burn_in < 0) throw DomainError("simulate_ricker: burn_in must be >= 0");
  const double r = std::exp(params.log_r);
  const double sigma = std::exp(params.log_sigma);
  const double phi = std::exp(params.log_phi);
  if (!std::isfinite(r) || !std::isfinite(sigma) || !std::isfinite(phi))
    throw DomainError("simulate_ricker: parameters overflow on exp scale");

  Dataset y;
  y.reserve(static_cast<std::size_t>(T));
  double N = 1.0;  // N_0
  const int total = burn_in + T;
  for (int t = 1; t <= total; ++t) {
    const double e = sigma * rng.normal();
    N = r * N * std::exp(-N + e);
    if (!std::isfinite(N) || N > kRickerOverflow)
      throw SimulationDiverged("simulate_ricker: latent state exceeded 1e12", t);
    if (t > burn_in) y.push_back(static_cast<double>(rng.poisson(phi * N)));
  }
  return y;
}

Dataset ricker_mean_path(double r, double phi, int T, int burn_in) {
  check_sample_size(T, "ricker_mean_path");
  if (burn_in < 0) throw DomainError("ricker_mean_path: burn_in must be >= 0");
  Dataset y;
  y.reserve(static_cast<std::size_t>(T));
  double N = 1.0;
  const int total = burn_in + T;
  for (int t = 1; t <= total; ++t) {
    N = r * N * std::exp(-N);
    if (!std::isfinite(N) || N > kRickerOverflow)
      throw SimulationDiverged("ricker_mean_path: latent state exceeded 1e12", t);
    if (t > burn_in) y.push_back(phi * N);
  }
  return y;
}

// ---------------------------------------------------------------------------
// NormalMeanModel
// ---------------------------------------------------------------------------

NormalMeanModel::NormalMeanModel(int n) : n_(n) {
  check_sample_size(n, "NormalMeanModel");
}

ParamBounds NormalMeanModel::param_support() const {
  ParamBounds b;
  b.lower = Eigen::VectorXd::Constant(1, -kInf);
  b.upper = Eigen::VectorXd::Constant(1, kInf);
  return b;
}

Dataset NormalMeanModel::simulate(const ParamVector& theta, RngStream& rng) const {
  if (theta.size() != 1) throw DomainError("NormalMeanModel: theta must be 1-dim");
  return simulate_normal(n_, theta[0], rng);
}

std::unique_ptr<GenerativeModel> NormalMeanModel::with_sample_size(int n) const {
  return std::make_unique<NormalMeanModel>(n);
}

// ---------------------------------------------------------------------------
// CauchyModel
// ---------------------------------------------------------------------------

CauchyModel::CauchyModel(int n, Mode mode, double fixed_loc, double fixed_scale)
    : n_(n), mode_(mode), fixed_loc_(fixed_loc), fixed_scale_(fixed_scale) {
  check_sample_size(n, "CauchyModel");
  if (!(fixed_scale > 0.0))
    throw DomainError("CauchyModel: fixed scale must be positive");
}

ParamBounds CauchyModel::param_support() const {
  ParamBounds b;
  const int p = param_dim();
  b.lower = Eigen::VectorXd::Constant(p, -kInf);
  b.upper = Eigen::VectorXd::Constant(p, kInf);
  switch (mode_) {
    case Mode::kLocation:
      break;
    case Mode::kScale:
      b.lower[0] = 0.0;  // open at 0; simulate rejects scale == 0
      break;
    case Mode::kBoth:
      b.lower[1] = 0.0;
      break;
  }
  return b;
}

Dataset CauchyModel::simulate(const ParamVector& theta, RngStream& rng) const {
  if (theta.size() != param_dim())
    throw DomainError("CauchyModel: theta has wrong dimension");
  double loc = fixed_loc_;
  double scale = fixed_scale_;
  switch (mode_) {
    case Mode::kLocation:
      loc = theta[0];
      break;
    case Mode::kScale:
      scale = theta[0];
      break;
    case Mode::kBoth:
      loc = theta[0];
      scale = theta[1];
      break;
  }
  return simulate_cauchy(n_, loc, scale, rng);
}

std::unique_ptr<GenerativeModel> CauchyModel::with_sample_size(int n) const {
  return std::make_unique<CauchyModel>(n, mode_, fixed_loc_, fixed_scale_);
}

// ---------------------------------------------------------------------------
// RickerModel
// ---------------------------------------------------------------------------

RickerModel::RickerModel(int T, int burn_in, std::array<bool, 3> free_mask,
                         const RickerParams& fixed)
    : T_(T), burn_in_(burn_in), free_mask_(free_mask), fixed_(fixed) {
  check_sample_size(T, "RickerModel");
  if (burn_in < 0) throw DomainError("RickerModel: burn_in must be >= 0");
  if (!free_mask[0] && !free_mask[1] && !free_mask[2])
    throw DomainError("RickerModel: at least one free parameter required");
}

int RickerModel::param_dim() const {
  return static_cast<int>(free_mask_[0]) + static_cast<int>(free_mask_[1]) +
         static_cast<int>(free_mask_[2]);
}

ParamBounds RickerModel::param_support() const {
  ParamBounds b;
  const int p = param_dim();
  b.lower = Eigen::VectorXd::Constant(p, -kInf);
  b.upper = Eigen::VectorXd::Constant(p, kInf);
  return b;
}

RickerParams RickerModel::assemble(const ParamVector& theta) const {
  if (theta.size() != param_dim())
    throw DomainError("RickerModel: theta has wrong dimension");
  RickerParams full = fixed_;
  int j = 0;
  if (free_mask_[0]) full.log_r = theta[j++];
  if (free_mask_[1]) full.log_sigma = theta[j++];
  if (free_mask_[2]) full.log_phi = theta[j++];
  return full;
}

Dataset RickerModel::simulate(const ParamVector& theta, RngStream& rng) const {
  return simulate_ricker(assemble(theta), T_, burn_in_, rng);
}

std::unique_ptr<GenerativeModel> RickerModel::with_sample_size(int n) const {
  return std::make_unique<RickerModel>(n, burn_in_, free_mask_, fixed_);
}

}  // namespace acdc
