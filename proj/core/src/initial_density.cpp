#include "acdc/initial_density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "acdc/kernels.hpp"
#include "acdc/stats.hpp"

namespace acdc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr int kSupportRejectionCap = 10000;

void check_box(const ParamBounds& box, int dim, const char* who) {
  if (box.dim() != dim || box.upper.size() != dim)
    throw DomainError(std::string(who) + ": box dimension mismatch");
  for (int j = 0; j < dim; ++j) {
    if (!(box.lower[j] < box.upper[j]))
      throw DomainError(std::string(who) + ": box must have lower < upper");
  }
}

}  // namespace

ParamVector sample_initial(const InitialDensity& density, RngStream& rng,
                           const std::optional<ParamBounds>& box) {
  if (!box) return density.sample(rng);
  if (density.proper()) return density.sample(rng);
  // Rebind the improper density to the caller's box for this draw.
  if (const auto* flat = dynamic_cast<const FlatInitial*>(&density)) {
    FlatInitial boxed(flat->dim(), *box);
    return boxed.sample(rng);
  }
  if (dynamic_cast<const InvScaleInitial*>(&density) != nullptr) {
    InvScaleInitial boxed(*box);
    return boxed.sample(rng);
  }
  throw DomainError("sample_initial: improper density without box support");
}

// ---------------------------------------------------------------------------
// FlatInitial
// ---------------------------------------------------------------------------

FlatInitial::FlatInitial(int dim, std::optional<ParamBounds> box)
    : dim_(dim), box_(std::move(box)) {
  if (dim <= 0) throw DomainError("FlatInitial: dim must be positive");
  if (box_) check_box(*box_, dim, "FlatInitial");
}

double FlatInitial::log_density(const ParamVector& theta) const {
  if (theta.size() != dim_) throw DomainError("FlatInitial: dimension mismatch");
  if (box_ && !box_->contains(theta)) return -kInf;
  return 0.0;  // unnormalized
}

ParamVector FlatInitial::sample(RngStream& rng) const {
  if (!box_)
    throw DomainError("FlatInitial: sampling an improper density needs a box");
  ParamVector theta(dim_);
  for (int j = 0; j < dim_; ++j)
    theta[j] = rng.uniform(box_->lower[j], box_->upper[j]);
  return theta;
}

// ---------------------------------------------------------------------------
// InvScaleInitial
// ---------------------------------------------------------------------------

InvScaleInitial::InvScaleInitial(std::optional<ParamBounds> box)
    : box_(std::move(box)) {
  if (box_) {
    check_box(*box_, 1, "InvScaleInitial");
    if (!(box_->lower[0] > 0.0))
      throw DomainError("InvScaleInitial: box must be strictly positive");
  }
}

double InvScaleInitial::log_density(const ParamVector& theta) const {
  if (theta.size() != 1) throw DomainError("InvScaleInitial: dimension mismatch");
  if (!(theta[0] > 0.0)) return -kInf;
  if (box_ && !box_->contains(theta)) return -kInf;
  return -std::log(theta[0]);  // unnormalized
}

ParamVector InvScaleInitial::sample(RngStream& rng) const {
  if (!box_)
    throw DomainError("InvScaleInitial: sampling an improper density needs a box");
  ParamVector theta(1);
  theta[0] = std::exp(
      rng.uniform(std::log(box_->lower[0]), std::log(box_->upper[0])));
  return theta;
}

// ---------------------------------------------------------------------------
// NormalInitial
// ---------------------------------------------------------------------------

NormalInitial::NormalInitial(double mu_n, double b_n) : mu_n_(mu_n), b_n_(b_n) {
  if (!(b_n > 0.0)) throw DomainError("NormalInitial: b_n must be positive");
}

double NormalInitial::log_density(const ParamVector& theta) const {
  if (theta.size() != 1) throw DomainError("NormalInitial: dimension mismatch");
  const double z = (theta[0] - mu_n_) * b_n_;
  return std::log(b_n_) - 0.5 * (kLog2Pi + z * z);
}

ParamVector NormalInitial::sample(RngStream& rng) const {
  ParamVector theta(1);
  theta[0] = mu_n_ + rng.normal() / b_n_;
  return theta;
}

// ---------------------------------------------------------------------------
// MinibatchKDE
// ---------------------------------------------------------------------------

MinibatchKDE::MinibatchKDE(std::vector<ParamVector> centers,
                           Eigen::VectorXd bandwidth,
                           std::optional<ParamBounds> support)
    : centers_(std::move(centers)),
      bandwidth_(std::move(bandwidth)),
      support_(std::move(support)) {
  if (centers_.empty()) throw DomainError("MinibatchKDE: need at least 1 center");
  const int p = static_cast<int>(centers_.front().size());
  for (const auto& c : centers_) {
    if (c.size() != p) throw DomainError("MinibatchKDE: center dim mismatch");
  }
  if (bandwidth_.size() != p)
    throw DomainError("MinibatchKDE: bandwidth dim mismatch");
  for (int j = 0; j < p; ++j) {
    if (!(bandwidth_[j] > 0.0))
      throw DomainError("MinibatchKDE: bandwidth must be positive");
  }
  if (support_) {
    check_box(*support_, p, "MinibatchKDE");
    for (const auto& c : centers_) {
      if (!support_->contains(c))
        throw DomainError("MinibatchKDE: center outside support");
    }
  }
}

int MinibatchKDE::dim() const { return static_cast<int>(centers_.front().size()); }

double MinibatchKDE::log_density(const ParamVector& theta) const {
  const int p = dim();
  if (theta.size() != p) throw DomainError("MinibatchKDE: dimension mismatch");
  if (support_ && !support_->contains(theta))
    return -std::numeric_limits<double>::infinity();
  double log_norm = 0.0;
  for (int j = 0; j < p; ++j) log_norm += std::log(bandwidth_[j]);
  log_norm += 0.5 * p * kLog2Pi;

  std::vector<double> terms(centers_.size());
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    double q = 0.0;
    for (int j = 0; j < p; ++j) {
      const double z = (theta[j] - centers_[i][j]) / bandwidth_[j];
      q += z * z;
    }
    terms[i] = -0.5 * q;
  }
  return logsumexp(terms) - log_norm -
         std::log(static_cast<double>(centers_.size()));
}

ParamVector MinibatchKDE::sample(RngStream& rng) const {
  const int p = dim();
  for (int attempt = 0; attempt < kSupportRejectionCap; ++attempt) {
    const auto i = rng.uniform_index(centers_.size());
    ParamVector theta(p);
    for (int j = 0; j < p; ++j)
      theta[j] = centers_[i][j] + bandwidth_[j] * rng.normal();
    if (!support_ || support_->contains(theta)) return theta;
  }
  throw DomainError(
      "MinibatchKDE: sampling failed to land in the support box (mass ~ 0)");
}

double kde_density(const MinibatchKDE& kde, const ParamVector& theta) {
  for (int j = 0; j < theta.size(); ++j) {
    if (!std::isfinite(theta[j]))
      throw DomainError("kde_density: theta must be finite");
  }
  return std::exp(kde.log_density(theta));
}

// ---------------------------------------------------------------------------
// Minibatch construction
// ---------------------------------------------------------------------------

Eigen::VectorXd silverman_bandwidth(const std::vector<ParamVector>& centers) {
  if (centers.empty())
    throw DomainError("silverman_bandwidth: need at least 1 center");
  const int p = static_cast<int>(centers.front().size());
  const auto k = static_cast<double>(centers.size());
  Eigen::VectorXd h(p);
  for (int j = 0; j < p; ++j) {
    double mean = 0.0;
    for (const auto& c : centers) mean += c[j];
    mean /= k;
    double ss = 0.0;
    for (const auto& c : centers) ss += (c[j] - mean) * (c[j] - mean);
    const double sd = centers.size() > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
    h[j] = 1.06 * sd * std::pow(k, -0.2);
    if (!(h[j] > 0.0)) {
      // Degenerate spread (k = 1 or coincident centers): keep the density
      // proper with a small positive width.
      h[j] = std::max(1e-3, 1e-3 * std::fabs(mean));
    }
  }
  return h;
}

MinibatchKDE kde_from_centers(std::vector<ParamVector> centers,
                              std::optional<ParamBounds> support) {
  Eigen::VectorXd h = silverman_bandwidth(centers);
  return MinibatchKDE(std::move(centers), std::move(h), std::move(support));
}

namespace {

std::vector<ParamVector> centers_from_subsets(
    const std::vector<Dataset>& subsets, const PointEstimator& estimator,
    RngStream& rng) {
  std::vector<ParamVector> centers;
  centers.reserve(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    try {
      centers.push_back(estimator(subsets[i], rng.substream(1000 + i)));
    } catch (const std::exception& e) {
      throw AcdcError("minibatch estimator failed on subset " +
                      std::to_string(i) + ": " + e.what());
    }
  }
  return centers;
}

}  // namespace

MinibatchKDE make_minibatch_rn(const Dataset& data, double nu, int k,
                               const PointEstimator& estimator, bool overlap,
                               RngStream rng,
                               std::optional<ParamBounds> support) {
  const auto n = static_cast<double>(data.size());
  if (!(nu > 0.0 && nu < 1.0))
    throw DomainError("make_minibatch_rn: nu must be in (0,1)");
  if (k < 1) throw DomainError("make_minibatch_rn: k must be >= 1");
  const auto m = static_cast<std::size_t>(std::floor(std::pow(n, nu)));
  if (m < 2) throw DomainError("make_minibatch_rn: subset size < 2");

  std::vector<std::size_t> indices(data.size());
  std::iota(indices.begin(), indices.end(), std::size_t{0});

  std::vector<Dataset> subsets;
  subsets.reserve(static_cast<std::size_t>(k));
  const bool disjoint =
      !overlap && m * static_cast<std::size_t>(k) <= data.size();
  if (disjoint) {
    // One global shuffle, then consecutive blocks: pairwise disjoint.
    for (std::size_t i = indices.size() - 1; i > 0; --i)
      std::swap(indices[i], indices[rng.uniform_index(i + 1)]);
    for (int s = 0; s < k; ++s) {
      Dataset sub(m);
      for (std::size_t j = 0; j < m; ++j)
        sub[j] = data[indices[static_cast<std::size_t>(s) * m + j]];
      subsets.push_back(std::move(sub));
    }
  } else {
    // Independently resampled subsets (sampling without replacement within
    // each subset) when disjointness is impossible or overlap is requested.
    for (int s = 0; s < k; ++s) {
      RngStream sub_rng = rng.substream(static_cast<std::uint64_t>(s));
      std::vector<std::size_t> pool = indices;
      Dataset sub(m);
      for (std::size_t j = 0; j < m; ++j) {
        const auto pick = j + sub_rng.uniform_index(pool.size() - j);
        std::swap(pool[j], pool[pick]);
        sub[j] = data[pool[j]];
      }
      subsets.push_back(std::move(sub));
    }
  }

  auto centers = centers_from_subsets(subsets, estimator, rng);
  return kde_from_centers(std::move(centers), std::move(support));
}

MinibatchKDE make_minibatch_rn_windows(const Dataset& data, int window_len,
                                       int k, const PointEstimator& estimator,
                                       RngStream rng,
                                       std::optional<ParamBounds> support) {
  const int T = static_cast<int>(data.size());
  if (window_len < 2 || window_len > T)
    throw DomainError("make_minibatch_rn_windows: bad window length");
  if (k < 1) throw DomainError("make_minibatch_rn_windows: k must be >= 1");

  std::vector<Dataset> subsets;
  subsets.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const double frac =
        k > 1 ? static_cast<double>(i) / static_cast<double>(k - 1) : 0.0;
    const int start = static_cast<int>(std::lround(frac * (T - window_len)));
    subsets.emplace_back(data.begin() + start,
                         data.begin() + start + window_len);
  }

  auto centers = centers_from_subsets(subsets, estimator, rng);
  return kde_from_centers(std::move(centers), std::move(support));
}

// ---------------------------------------------------------------------------
// PMC-ABC point estimator
// ---------------------------------------------------------------------------

namespace {

struct MvnKernel {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double log_norm = 0.0;  // 0.5 * (p log 2pi + log det)

  explicit MvnKernel(Eigen::MatrixXd cov) {
    const int p = static_cast<int>(cov.rows());
    // Jitter until the (possibly near-singular) covariance factorizes.
    double jitter = 1e-12;
    for (;;) {
      llt.compute(cov);
      if (llt.info() == Eigen::Success && cov.diagonal().minCoeff() > 0.0) break;
      cov.diagonal().array() += jitter;
      jitter *= 10.0;
      if (jitter > 1e6)
        throw ParticleDegeneracyError("pmc: perturbation covariance defective");
    }
    double log_det = 0.0;
    for (int j = 0; j < p; ++j) log_det += 2.0 * std::log(llt.matrixL()(j, j));
    log_norm = 0.5 * (p * kLog2Pi + log_det);
  }

  double log_pdf(const ParamVector& x, const ParamVector& mean) const {
    const Eigen::VectorXd z = llt.matrixL().solve(x - mean);
    return -0.5 * z.squaredNorm() - log_norm;
  }

  ParamVector perturb(const ParamVector& mean, RngStream& rng) const {
    ParamVector z(mean.size());
    for (int j = 0; j < z.size(); ++j) z[j] = rng.normal();
    return mean + llt.matrixL() * z;
  }
};

std::size_t sample_categorical(const std::vector<double>& cumweights,
                               RngStream& rng) {
  const double u = rng.uniform() * cumweights.back();
  const auto it = std::upper_bound(cumweights.begin(), cumweights.end(), u);
  return std::min<std::size_t>(
      static_cast<std::size_t>(it - cumweights.begin()),
      cumweights.size() - 1);
}

}  // namespace

PmcEstimate pmc_point_estimate(const Dataset& subset,
                               const GenerativeModel& model,
                               const SummarySpec& summary, int generations,
                               RngStream rng, const PmcOptions& options) {
  if (generations < 1)
    throw DomainError("pmc_point_estimate: generations must be >= 1");
  if (options.particles < 20)
    throw DomainError("pmc_point_estimate: need at least 20 particles");
  const int p = options.prior_box.dim();
  check_box(options.prior_box, p, "pmc_point_estimate");
  if (p != model.param_dim())
    throw DomainError("pmc_point_estimate: prior box / model dim mismatch");

  const auto sub_model = model.with_sample_size(static_cast<int>(subset.size()));
  const SummaryVector s_obs = apply_summary(summary.name, subset);
  const FlatInitial prior(p, options.prior_box);
  long n_sims = 0;

  // Generation 0: box prior, keep distances below their median.
  std::vector<ParamVector> thetas;
  std::vector<SummaryVector> summaries;
  {
    RngStream gen_rng = rng.substream(0);
    for (int i = 0; i < options.particles; ++i) {
      RngStream it_rng = gen_rng.substream(static_cast<std::uint64_t>(i));
      ParamVector theta = prior.sample(it_rng);
      ++n_sims;
      try {
        Dataset x = sub_model->simulate(theta, it_rng);
        summaries.push_back(apply_summary(summary.name, x));
        thetas.push_back(std::move(theta));
      } catch (const SimulationDiverged&) {
        continue;  // rejected proposal, still counted in the budget
      } catch (const DegenerateSummaryError&) {
        continue;
      }
    }
  }
  if (summaries.size() < 20)
    throw ParticleDegeneracyError(
        "pmc_point_estimate: fewer than 20 valid generation-0 particles");

  const std::vector<double> scales = standardize_scales(summaries);
  std::vector<double> distances(summaries.size());
  for (std::size_t i = 0; i < summaries.size(); ++i)
    distances[i] = lambda_distance(summaries[i], s_obs, scales);

  std::vector<double> sorted = distances;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                   sorted.end());
  const double eps0 = sorted[sorted.size() / 2];

  std::vector<ParamVector> particles;
  std::vector<double> weights;
  std::vector<double> acc_dist;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (distances[i] <= eps0) {
      particles.push_back(thetas[i]);
      weights.push_back(1.0);
      acc_dist.push_back(distances[i]);
    }
  }
  if (particles.size() < 2)
    throw ParticleDegeneracyError("pmc_point_estimate: generation 0 collapsed");

  // Refinement generations.
  for (int g = 1; g < generations; ++g) {
    const double eps = weighted_quantile(acc_dist, weights, 0.5);
    const Eigen::MatrixXd cov =
        2.0 * weighted_covariance(particles, weights);
    const MvnKernel kernel(cov);

    std::vector<double> cumw(weights.size());
    std::partial_sum(weights.begin(), weights.end(), cumw.begin());

    std::vector<ParamVector> new_particles;
    std::vector<double> new_weights;
    std::vector<double> new_dist;
    RngStream gen_rng = rng.substream(static_cast<std::uint64_t>(g));
    const long cap =
        options.max_proposals_factor * static_cast<long>(options.particles);
    long proposal = 0;
    while (static_cast<int>(new_particles.size()) < options.particles &&
           proposal < cap) {
      RngStream it_rng = gen_rng.substream(static_cast<std::uint64_t>(proposal));
      ++proposal;
      const std::size_t j = sample_categorical(cumw, it_rng);
      ParamVector theta = kernel.perturb(particles[j], it_rng);
      if (!options.prior_box.contains(theta)) continue;  // prior weight 0
      ++n_sims;
      SummaryVector s;
      try {
        Dataset x = sub_model->simulate(theta, it_rng);
        s = apply_summary(summary.name, x);
      } catch (const SimulationDiverged&) {
        continue;
      } catch (const DegenerateSummaryError&) {
        continue;
      }
      const double d = lambda_distance(s, s_obs, scales);
      if (d > eps) continue;
      // Importance weight: flat prior over the resampling mixture.
      std::vector<double> logmix(particles.size());
      for (std::size_t q = 0; q < particles.size(); ++q)
        logmix[q] = std::log(weights[q]) + kernel.log_pdf(theta, particles[q]);
      new_weights.push_back(std::exp(-logsumexp(logmix)));
      new_particles.push_back(std::move(theta));
      new_dist.push_back(d);
    }
    if (new_particles.size() < 2 ||
        ess_of_weights(new_weights) < options.ess_floor)
      throw ParticleDegeneracyError(
          "pmc_point_estimate: particle degeneracy at generation " +
          std::to_string(g));
    particles = std::move(new_particles);
    weights = std::move(new_weights);
    acc_dist = std::move(new_dist);
  }

  if (ess_of_weights(weights) < options.ess_floor)
    throw ParticleDegeneracyError("pmc_point_estimate: final ESS below floor");
  return PmcEstimate{weighted_mean(particles, weights), n_sims};
}

PointEstimator make_point_estimator(const std::string& name,
                                    const GenerativeModel* model,
                                    const SummarySpec* summary,
                                    const PmcOptions* pmc, long* sim_counter) {
  if (name == "median") {
    return [](const Dataset& subset, RngStream) {
      ParamVector c(1);
      c[0] = median(subset);
      return c;
    };
  }
  if (name == "mad") {
    return [](const Dataset& subset, RngStream) {
      ParamVector c(1);
      c[0] = mad(subset);
      return c;
    };
  }
  if (name == "median_mad") {
    return [](const Dataset& subset, RngStream) {
      ParamVector c(2);
      c[0] = median(subset);
      c[1] = mad(subset);
      return c;
    };
  }
  if (name == "pmc") {
    if (model == nullptr || summary == nullptr || pmc == nullptr)
      throw DomainError("make_point_estimator: pmc needs model/summary/options");
    return [model, summary, pmc, sim_counter](const Dataset& subset,
                                              RngStream rng) {
      PmcEstimate est = pmc_point_estimate(subset, *model, *summary,
                                           pmc->generations, rng, *pmc);
      if (sim_counter != nullptr) *sim_counter += est.n_simulations;
      return est.estimate;
    };
  }
  throw DomainError("make_point_estimator: unknown estimator '" + name + "'");
}

}  // namespace acdc
