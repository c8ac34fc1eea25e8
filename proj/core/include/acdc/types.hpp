#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace acdc {

/// Free parameters of a generative model, in the coordinates inference runs
/// in (e.g. log-parameters for the Ricker map).
using ParamVector = Eigen::VectorXd;

/// Low-dimensional summary statistic of a dataset.
using SummaryVector = Eigen::VectorXd;

/// Raw observations; integer-valued series are stored as doubles.
using Dataset = std::vector<double>;

/// Per-coordinate box, possibly unbounded (+-inf entries allowed).
struct ParamBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const ParamVector& theta) const {
    if (theta.size() != lower.size()) return false;
    for (int j = 0; j < theta.size(); ++j) {
      if (!(theta[j] >= lower[j] && theta[j] <= upper[j])) return false;
    }
    return true;
  }
};

struct AcdcError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument or parameter outside a model's support.
struct DomainError : AcdcError {
  using AcdcError::AcdcError;
};

/// A model trajectory left its numerically representable range.
struct SimulationDiverged : AcdcError {
  SimulationDiverged(const std::string& what, int step)
      : AcdcError(what), step(step) {}
  int step;
};

/// Sampler produced zero accepted draws.
struct EmptySampleError : AcdcError {
  EmptySampleError(const std::string& what, double min_distance)
      : AcdcError(what), min_distance(min_distance) {}
  double min_distance;
};

/// Regression design matrix is rank deficient.
struct SingularDesignError : AcdcError {
  using AcdcError::AcdcError;
};

/// Importance weights collapsed onto too few particles.
struct ParticleDegeneracyError : AcdcError {
  using AcdcError::AcdcError;
};

}  // namespace acdc
