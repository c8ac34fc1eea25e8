#include "acdc/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "acdc/stats.hpp"

namespace acdc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Proposal {
  ParamVector theta;
  SummaryVector summary;
  double distance = kInf;
  double coin = 1.0;
  bool valid = false;
};

/// The parallel propose-simulate-summarize map.  Iteration i draws from
/// rng.substream(i) regardless of thread layout, so output is identical for
/// any `jobs`.
std::vector<Proposal> propose_all(const GenerativeModel& model,
                                  const SummarySpec& summary,
                                  const InitialDensity& rn,
                                  const std::vector<double>& lambda_scale,
                                  long N, const SummaryVector& s_obs,
                                  const RngStream& rng,
                                  const SamplerRunOptions& options) {
  std::vector<Proposal> out(static_cast<std::size_t>(N));
  const int jobs = std::max(1, options.jobs);

  auto worker = [&](long lo, long hi, std::exception_ptr& err) {
    try {
      for (long i = lo; i < hi; ++i) {
        RngStream it_rng = rng.substream(static_cast<std::uint64_t>(i));
        Proposal& prop = out[static_cast<std::size_t>(i)];
        prop.theta = sample_initial(rn, it_rng, options.sample_box);
        try {
          const Dataset x = model.simulate(prop.theta, it_rng);
          prop.summary = apply_summary(summary.name, x);
          prop.distance = lambda_distance(prop.summary, s_obs, lambda_scale);
          prop.coin = it_rng.uniform();
          prop.valid = true;
        } catch (const SimulationDiverged&) {
          // Rejected proposal: extreme theta from a broad proposal is an
          // expected event, not a pipeline failure.
        } catch (const DegenerateSummaryError&) {
        }
      }
    } catch (...) {
      err = std::current_exception();
    }
  };

  if (jobs == 1) {
    std::exception_ptr err;
    worker(0, N, err);
    if (err) std::rethrow_exception(err);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(jobs));
    const long chunk = (N + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
      const long lo = t * chunk;
      const long hi = std::min(N, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi, std::ref(errs[static_cast<std::size_t>(t)]));
    }
    for (auto& th : pool) th.join();
    for (auto& err : errs)
      if (err) std::rethrow_exception(err);
  }
  return out;
}

void check_run_args(const KernelSpec& kernel, long N,
                    const SummaryVector& s_obs,
                    const SamplerRunOptions& options) {
  if (N < 1) throw DomainError("sampler: N must be >= 1");
  if (kernel.lambda_scale.size() != static_cast<std::size_t>(s_obs.size()))
    throw DomainError("sampler: lambda_scale / s_obs dimension mismatch");
  if (options.proportion) {
    if (kernel.kind != KernelKind::kUniform)
      throw DomainError("sampler: proportion mode requires the uniform kernel");
    if (!(*options.proportion > 0.0) || *options.proportion > 1.0)
      throw DomainError("sampler: proportion must be in (0,1]");
  } else if (!(kernel.epsilon > 0.0)) {
    throw DomainError("sampler: epsilon must be > 0");
  }
}

/// Shared accept/filter pass; fills everything except importance weights.
CDSample accept_pass(const GenerativeModel&, const KernelSpec& kernel, long N,
                     const SummaryVector& s_obs,
                     const SamplerRunOptions& options,
                     std::vector<Proposal>&& proposals) {
  CDSample sample;
  sample.s_obs = s_obs;
  sample.n_proposed = N;

  double min_distance = kInf;
  std::vector<long> accepted;
  if (options.proportion) {
    std::vector<DistanceRecord> records;
    records.reserve(proposals.size());
    for (long i = 0; i < N; ++i) {
      const Proposal& prop = proposals[static_cast<std::size_t>(i)];
      if (!prop.valid) {
        ++sample.n_diverged;
        continue;
      }
      records.push_back({i, prop.distance});
      min_distance = std::min(min_distance, prop.distance);
    }
    if (records.empty())
      throw EmptySampleError("sampler: no valid simulations", min_distance);
    sample.epsilon_used = tolerance_from_proportion(records, *options.proportion);
    accepted = accepted_by_proportion(records, *options.proportion);
  } else {
    sample.epsilon_used = kernel.epsilon;
    for (long i = 0; i < N; ++i) {
      const Proposal& prop = proposals[static_cast<std::size_t>(i)];
      if (!prop.valid) {
        ++sample.n_diverged;
        continue;
      }
      min_distance = std::min(min_distance, prop.distance);
      const double w = kernel_weight(kernel, prop.distance);
      if (prop.coin < w) accepted.push_back(i);
    }
  }

  if (accepted.empty())
    throw EmptySampleError("sampler: zero acceptances", min_distance);

  sample.draws.reserve(accepted.size());
  for (long i : accepted) {
    Proposal& prop = proposals[static_cast<std::size_t>(i)];
    AcceptedDraw draw;
    draw.theta = std::move(prop.theta);
    draw.summary = std::move(prop.summary);
    sample.draws.push_back(std::move(draw));
  }
  return sample;
}

}  // namespace

CDSample run_acdc(const GenerativeModel& model, const SummarySpec& summary,
                  const InitialDensity& rn, const KernelSpec& kernel, long N,
                  const SummaryVector& s_obs, RngStream rng,
                  const SamplerRunOptions& options) {
  check_run_args(kernel, N, s_obs, options);
  auto proposals =
      propose_all(model, summary, rn, kernel.lambda_scale, N, s_obs, rng, options);
  return accept_pass(model, kernel, N, s_obs, options, std::move(proposals));
}

CDSample run_is_abc(const GenerativeModel& model, const SummarySpec& summary,
                    const InitialDensity& rn, const InitialDensity& prior,
                    const KernelSpec& kernel, long N,
                    const SummaryVector& s_obs, RngStream rng,
                    const SamplerRunOptions& options) {
  if (prior.dim() != rn.dim())
    throw DomainError("run_is_abc: prior / r_n dimension mismatch");
  check_run_args(kernel, N, s_obs, options);
  auto proposals =
      propose_all(model, summary, rn, kernel.lambda_scale, N, s_obs, rng, options);
  CDSample sample =
      accept_pass(model, kernel, N, s_obs, options, std::move(proposals));

  // Importance weights up to a common constant: normalize by the max of the
  // log ratios so extreme r_n tails cannot overflow.
  std::vector<double> logw(sample.draws.size());
  double max_logw = -kInf;
  for (std::size_t i = 0; i < sample.draws.size(); ++i) {
    logw[i] = prior.log_density(sample.draws[i].theta) -
              rn.log_density(sample.draws[i].theta);
    max_logw = std::max(max_logw, logw[i]);
  }
  if (!std::isfinite(max_logw))
    throw ParticleDegeneracyError("run_is_abc: all importance weights zero");
  for (std::size_t i = 0; i < sample.draws.size(); ++i)
    sample.draws[i].importance_weight = std::exp(logw[i] - max_logw);
  return sample;
}

double effective_sample_size(const CDSample& sample) {
  if (sample.draws.empty())
    throw DomainError("effective_sample_size: empty sample");
  return ess_of_weights(sample.weights());
}

}  // namespace acdc
