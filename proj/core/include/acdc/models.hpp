#pragma once

#include <array>
#include <memory>
#include <string>

#include "acdc/rng.hpp"
#include "acdc/types.hpp"

namespace acdc {

// ---------------------------------------------------------------------------
// Simulation primitives
// ---------------------------------------------------------------------------

/// n iid draws from N(mean, 1).
Dataset simulate_normal(int n, double mean, RngStream& rng);

/// n iid draws from Cauchy(loc, scale); scale must be > 0.
Dataset simulate_cauchy(int n, double loc, double scale, RngStream& rng);

/// Natural-scale parameters of the Ricker state-space model.
struct RickerParams {
  double log_r = 0.0;      // log growth rate
  double log_sigma = 0.0;  // log innovation sd
  double log_phi = 0.0;    // log observation scale
};

/// Ricker map observations: latent N_t = r * N_{t-1} * exp(-N_{t-1} + e_t)
/// with e_t ~ N(0, sigma^2), observed y_t ~ Poisson(phi * N_t).  The chain
/// starts at N_0 = 1 and the first `burn_in` observations are discarded;
/// the returned series has length T.  Throws SimulationDiverged (with the
/// offending step) if any N_t exceeds 1e12: exp explosions at extreme
/// parameter draws must fail loudly rather than poison the summaries.
Dataset simulate_ricker(const RickerParams& params, int T, int burn_in,
                        RngStream& rng);

/// Deterministic test hook: the Ricker recursion with sigma = 0 and the
/// Poisson observation replaced by its mean phi * N_t.  Returns the T values
/// after burn-in.  With r = e, N_0 = 1 the first latent value is exactly 1.
Dataset ricker_mean_path(double r, double phi, int T, int burn_in);

// ---------------------------------------------------------------------------
// Model interface
// ---------------------------------------------------------------------------

/// A simulator with an explicit free-parameter space.  Fixed (nuisance)
/// parameters are baked into the concrete model, so `theta` always has
/// param_dim() coordinates.
class GenerativeModel {
 public:
  virtual ~GenerativeModel() = default;

  virtual std::string name() const = 0;
  virtual int param_dim() const = 0;
  virtual int sample_size() const = 0;
  /// Support of the free parameters; simulate() throws DomainError outside.
  virtual ParamBounds param_support() const = 0;
  virtual Dataset simulate(const ParamVector& theta, RngStream& rng) const = 0;
  /// Same model, fixed parameters and all, at a different sample size.
  /// Used to retarget estimators at data subsets.
  virtual std::unique_ptr<GenerativeModel> with_sample_size(int n) const = 0;
};

/// N(theta, 1) iid sample; theta is the mean.
class NormalMeanModel final : public GenerativeModel {
 public:
  explicit NormalMeanModel(int n);

  std::string name() const override { return "normal"; }
  int param_dim() const override { return 1; }
  int sample_size() const override { return n_; }
  ParamBounds param_support() const override;
  Dataset simulate(const ParamVector& theta, RngStream& rng) const override;
  std::unique_ptr<GenerativeModel> with_sample_size(int n) const override;

 private:
  int n_;
};

/// Cauchy(loc, scale) iid sample.  The free parameters are selected by mode:
/// location only, scale only, or both (in that order); the other coordinate
/// is held at a fixed value.
class CauchyModel final : public GenerativeModel {
 public:
  enum class Mode { kLocation, kScale, kBoth };

  CauchyModel(int n, Mode mode, double fixed_loc, double fixed_scale);

  std::string name() const override { return "cauchy"; }
  int param_dim() const override { return mode_ == Mode::kBoth ? 2 : 1; }
  int sample_size() const override { return n_; }
  ParamBounds param_support() const override;
  Dataset simulate(const ParamVector& theta, RngStream& rng) const override;
  std::unique_ptr<GenerativeModel> with_sample_size(int n) const override;

  Mode mode() const { return mode_; }

 private:
  int n_;
  Mode mode_;
  double fixed_loc_;
  double fixed_scale_;
};

/// Ricker map with a configurable subset of (log r, log sigma, log phi)
/// free; the remaining coordinates are held at fixed values.  Free
/// coordinates keep their natural order.
class RickerModel final : public GenerativeModel {
 public:
  RickerModel(int T, int burn_in, std::array<bool, 3> free_mask,
              const RickerParams& fixed);

  std::string name() const override { return "ricker"; }
  int param_dim() const override;
  int sample_size() const override { return T_; }
  ParamBounds param_support() const override;
  Dataset simulate(const ParamVector& theta, RngStream& rng) const override;
  std::unique_ptr<GenerativeModel> with_sample_size(int n) const override;

  int burn_in() const { return burn_in_; }
  std::array<bool, 3> free_mask() const { return free_mask_; }
  /// Expand free coordinates to a full parameter triple.
  RickerParams assemble(const ParamVector& theta) const;

 private:
  int T_;
  int burn_in_;
  std::array<bool, 3> free_mask_;
  RickerParams fixed_;
};

}  // namespace acdc
