#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace netmon {

template <typename Scalar>
using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorT<double>;
using Matrix = MatrixT<double>;
using Index = Eigen::Index;

// Probability masses and distributions are checked at construction time
// against kBuildTol; equilibrium properties (epsilon, solver agreement) are
// verified against kVerifyTol, two decades looser than the solver tolerance.
inline constexpr double kBuildTol = 1e-9;
inline constexpr double kVerifyTol = 1e-7;

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A search exhausted its configured budget. Carries the best bound proved
// before the limit was hit.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, double best_bound)
      : std::runtime_error(what), best_bound_(best_bound) {}
  double bestBound() const { return best_bound_; }

 private:
  double best_bound_;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace netmon
