#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace tridot {

// Charge-sector Hilbert space of the tri-dot cluster: n_A, n_B in {0,1},
// n_C in {0,1,2}, so dim = 2*2*3.
inline constexpr int kDim = 12;
inline constexpr int kSuperDim = kDim * kDim;

using Complex = std::complex<double>;
using Operator = Eigen::Matrix<Complex, kDim, kDim>;
using DensityMatrix = Operator;
using SuperMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::Vector<Complex, kDim>;
using SuperVector = Eigen::VectorXcd;

constexpr Complex kImag{0.0, 1.0};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by steady_state() when the Liouvillian nullspace has dimension > 1.
struct DegenerateSteadyState : NumericalError {
  DegenerateSteadyState(int dim, const std::string& what)
      : NumericalError(what), dimension(dim) {}
  int dimension;
};

}  // namespace tridot
