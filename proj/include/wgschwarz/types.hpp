#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace wgs {

using Real = double;
using Complex = std::complex<double>;
using Eigen::Index;

using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using Matrix2c = Eigen::Matrix2cd;

// Error taxonomy. DomainError covers invalid inputs and configuration (CLI
// exit code 2); NumericError covers runtime numerical failures (exit code 3).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ConfigError : DomainError {
  using DomainError::DomainError;
};

// Mode sits too close to cut-off for the axial wavenumber to be trustworthy.
struct CutoffError : DomainError {
  using DomainError::DomainError;
};

struct NumericError : Error {
  using Error::Error;
};

// Interior damping parameters hit a resonance of the auxiliary layer problem.
struct PmlResonanceError : NumericError {
  using NumericError::NumericError;
};

// Shared denominator of the iteration couplings is numerically singular.
struct SingularDenominatorError : NumericError {
  using NumericError::NumericError;
};

// A subdomain interface matrix cannot be inverted.
struct SingularInterfaceError : NumericError {
  using NumericError::NumericError;
};

// Problem size exceeds a configured cap (e.g. dense eigensolve dimension).
struct ResourceError : NumericError {
  using NumericError::NumericError;
};

}  // namespace wgs
