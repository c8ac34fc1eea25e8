#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acdc/initial_density.hpp"
#include "acdc/kernels.hpp"
#include "acdc/models.hpp"
#include "acdc/rng.hpp"
#include "acdc/summaries.hpp"
#include "acdc/types.hpp"

namespace acdc {

/// One accepted draw.  kernel_weight is 1 for both samplers: the kernel is
/// absorbed into the Bernoulli acceptance event (storing K(d) again would
/// double-count it); importance_weight is 1 for ACDC and prior/r_n (up to a
/// common constant) for IS-ABC.
struct AcceptedDraw {
  ParamVector theta;
  SummaryVector summary;
  double kernel_weight = 1.0;
  double importance_weight = 1.0;

  double weight() const { return kernel_weight * importance_weight; }
};

/// Monte Carlo representation of Q_epsilon(theta | s_obs).
struct CDSample {
  std::vector<AcceptedDraw> draws;
  SummaryVector s_obs;
  long n_proposed = 0;
  bool adjusted = false;
  bool adjustment_fallback = false;  // singular design, adjustment skipped
  double epsilon_used = 0.0;
  long n_diverged = 0;  // proposals whose simulation failed

  std::vector<double> weights() const {
    std::vector<double> w(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) w[i] = draws[i].weight();
    return w;
  }
};

struct SamplerRunOptions {
  /// When set (uniform kernel only), tolerance is chosen by the two-pass
  /// order-statistic rule: store all N, keep the best ceil(p*N) by distance
  /// (ties by simulation index).  KernelSpec.epsilon is ignored.
  std::optional<double> proportion;
  /// Worker threads for the propose-simulate-summarize map.  Results are
  /// identical for any value: iteration i always uses substream(i).
  int jobs = 1;
  /// Sampling box for improper r_n densities.
  std::optional<ParamBounds> sample_box;
};

/// Algorithm: for i = 1..N draw theta_i ~ r_n, simulate x^i ~ M_theta,
/// accept with probability K_eps(||S(x^i) - s_obs||_Lambda).  Accepted draws
/// carry importance_weight 1.  Proposals whose simulation diverges (or whose
/// summary is degenerate) are rejected and tallied in n_diverged.
CDSample run_acdc(const GenerativeModel& model, const SummarySpec& summary,
                  const InitialDensity& rn, const KernelSpec& kernel, long N,
                  const SummaryVector& s_obs, RngStream rng,
                  const SamplerRunOptions& options = {});

/// Same loop with a fixed prior target: accepted draws carry
/// importance_weight = prior(theta)/r_n(theta), stored up to a common
/// constant (normalized by the max over accepted draws for stability).
CDSample run_is_abc(const GenerativeModel& model, const SummarySpec& summary,
                    const InitialDensity& rn, const InitialDensity& prior,
                    const KernelSpec& kernel, long N,
                    const SummaryVector& s_obs, RngStream rng,
                    const SamplerRunOptions& options = {});

/// (sum w)^2 / sum w^2 over combined kernel x importance weights.
double effective_sample_size(const CDSample& sample);

}  // namespace acdc
