#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "acdc/models.hpp"
#include "acdc/rng.hpp"
#include "acdc/summaries.hpp"
#include "acdc/types.hpp"

namespace acdc {

/// The initial/proposal density r_n(theta).  Improper members (flat, 1/sigma)
/// need a finite sampling box; their log_density is unnormalized (constants
/// cancel in importance ratios).
class InitialDensity {
 public:
  virtual ~InitialDensity() = default;

  virtual int dim() const = 0;
  virtual bool proper() const = 0;
  /// Log density; -inf outside the support. Unnormalized when !proper().
  virtual double log_density(const ParamVector& theta) const = 0;
  /// Draw one theta.  Improper densities throw DomainError without a box.
  virtual ParamVector sample(RngStream& rng) const = 0;
};

/// Algorithm step "theta_i ~ r_n": draw from the density, with an optional
/// explicit box overriding/supplying the sampling region of improper
/// densities.
ParamVector sample_initial(const InitialDensity& density, RngStream& rng,
                           const std::optional<ParamBounds>& box = std::nullopt);

/// Flat density on a box (improper viewed as a prior; sampling is uniform).
class FlatInitial final : public InitialDensity {
 public:
  explicit FlatInitial(int dim, std::optional<ParamBounds> box = std::nullopt);

  int dim() const override { return dim_; }
  bool proper() const override { return false; }
  double log_density(const ParamVector& theta) const override;
  ParamVector sample(RngStream& rng) const override;
  const std::optional<ParamBounds>& box() const { return box_; }

 private:
  int dim_;
  std::optional<ParamBounds> box_;
};

/// 1/sigma density on a positive box (scale-invariant reference); sampling
/// is log-uniform.  One-dimensional.
class InvScaleInitial final : public InitialDensity {
 public:
  explicit InvScaleInitial(std::optional<ParamBounds> box = std::nullopt);

  int dim() const override { return 1; }
  bool proper() const override { return false; }
  double log_density(const ParamVector& theta) const override;
  ParamVector sample(RngStream& rng) const override;

 private:
  std::optional<ParamBounds> box_;
};

/// Gaussian N(mu_n, b_n^{-2}), the Appendix-style diagnostic density.
class NormalInitial final : public InitialDensity {
 public:
  NormalInitial(double mu_n, double b_n);

  int dim() const override { return 1; }
  bool proper() const override { return true; }
  double log_density(const ParamVector& theta) const override;
  ParamVector sample(RngStream& rng) const override;

  double mu_n() const { return mu_n_; }
  double b_n() const { return b_n_; }

 private:
  double mu_n_;
  double b_n_;
};

/// Product-Gaussian kernel density estimate over minibatch point estimates.
/// Sampling picks a center uniformly and adds h ∘ N(0, I); when a support
/// box is attached, draws are rejected into it so samples always lie in the
/// model's parameter support.
class MinibatchKDE final : public InitialDensity {
 public:
  /// centers: k rows of dimension p; bandwidth: per-dimension, all > 0.
  MinibatchKDE(std::vector<ParamVector> centers, Eigen::VectorXd bandwidth,
               std::optional<ParamBounds> support = std::nullopt);

  int dim() const override;
  bool proper() const override { return true; }
  double log_density(const ParamVector& theta) const override;
  ParamVector sample(RngStream& rng) const override;

  const std::vector<ParamVector>& centers() const { return centers_; }
  const Eigen::VectorXd& bandwidth() const { return bandwidth_; }
  int k() const { return static_cast<int>(centers_.size()); }

 private:
  std::vector<ParamVector> centers_;
  Eigen::VectorXd bandwidth_;
  std::optional<ParamBounds> support_;
};

/// Mixture-of-Gaussians density value (linear scale).
double kde_density(const MinibatchKDE& kde, const ParamVector& theta);

/// Point estimator applied to one data subset.
using PointEstimator =
    std::function<ParamVector(const Dataset& subset, RngStream rng)>;

/// Silverman bandwidths h_j = 1.06 * sd_j(centers) * k^{-1/5} with a small
/// positive fallback for degenerate spreads (k = 1 or coincident centers).
Eigen::VectorXd silverman_bandwidth(const std::vector<ParamVector>& centers);

/// Fit a KDE to precomputed centers (shared by the IID and windowed paths).
MinibatchKDE kde_from_centers(std::vector<ParamVector> centers,
                              std::optional<ParamBounds> support = std::nullopt);

/// Minibatch scheme for IID data: draw k subsets of size floor(n^nu)
/// (disjoint when overlap=false and k*floor(n^nu) <= n, otherwise
/// independently resampled without replacement within each subset), apply
/// the estimator to each, and fit the KDE over the centers.
MinibatchKDE make_minibatch_rn(const Dataset& data, double nu, int k,
                               const PointEstimator& estimator, bool overlap,
                               RngStream rng,
                               std::optional<ParamBounds> support = std::nullopt);

/// Minibatch scheme for ordered series: k contiguous windows of length
/// window_len with evenly spaced starts round(i*(T-L)/(k-1)) covering the
/// series (overlapping when k*L > T).
MinibatchKDE make_minibatch_rn_windows(const Dataset& data, int window_len,
                                       int k, const PointEstimator& estimator,
                                       RngStream rng,
                                       std::optional<ParamBounds> support =
                                           std::nullopt);

/// Knobs for the PMC-ABC subset estimator.
struct PmcOptions {
  ParamBounds prior_box;    // generation-0 box prior (required)
  int particles = 256;      // particles per generation
  int generations = 3;      // >= 1; 1 reduces to accept-reject ABC
  double ess_floor = 10.0;  // degeneracy threshold
  long max_proposals_factor = 40;  // per-generation proposal cap, x particles
};

/// Result of one PMC run: the weighted posterior-mean estimate and the
/// simulation count spent (for budget accounting).
struct PmcEstimate {
  ParamVector estimate;
  long n_simulations = 0;
};

/// Population Monte Carlo ABC estimate of E{theta | S_n(subset)}.
/// Generation 0 samples the box prior and keeps distances below their
/// median (equal weights); each later generation perturbs resampled
/// particles with Gaussian noise of covariance 2x the weighted particle
/// covariance, reweights by prior/mixture, and shrinks the tolerance to the
/// weighted 50% quantile of the previous accepted distances.
PmcEstimate pmc_point_estimate(const Dataset& subset,
                               const GenerativeModel& model,
                               const SummarySpec& summary, int generations,
                               RngStream rng, const PmcOptions& options);

/// Name-based estimator lookup for configs: "median", "mad", "median_mad",
/// or "pmc" (the latter needs model/summary/options context).
PointEstimator make_point_estimator(const std::string& name,
                                    const GenerativeModel* model = nullptr,
                                    const SummarySpec* summary = nullptr,
                                    const PmcOptions* pmc = nullptr,
                                    long* sim_counter = nullptr);

}  // namespace acdc
