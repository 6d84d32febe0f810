#include "wgschwarz/schwarz.hpp"

#include <cmath>
#include <sstream>

namespace wgs {
namespace {

Matrix2c invert_interface(const Matrix2c& m) {
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Real scale = m.cwiseAbs().maxCoeff();
  if (!(std::abs(det) > 1e-13 * scale * scale)) {
    std::ostringstream msg;
    msg << "interface matrix is numerically singular (|det|=" << std::abs(det) << ")";
    throw SingularInterfaceError(msg.str());
  }
  Matrix2c inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return inv / det;
}

}  // namespace

DecompositionGeometry::DecompositionGeometry(Real core_length_, Real overlap_, int subdomains_)
    : core_length(core_length_), overlap(overlap_), subdomains(subdomains_) {
  if (!(core_length > 0)) {
    throw DomainError("core length must be positive");
  }
  if (!(overlap > 0)) {
    throw DomainError("overlap must be positive");
  }
  if (subdomains < 2) {
    throw DomainError("decomposition needs at least two subdomains");
  }
}

Real DecompositionGeometry::left(int l) const {
  if (l < 1 || l > subdomains) {
    throw DomainError("subdomain index out of range");
  }
  return static_cast<Real>(l - 1) * (core_length + overlap);
}

Real DecompositionGeometry::right(int l) const {
  return left(l) + core_length + 2 * overlap;
}

InterfaceMatrices interface_matrices(const Mode& mode, Complex lambda,
                                     const DecompositionGeometry& geometry, int l) {
  const Complex i(0, 1);
  const Complex beta = mode.beta;
  const Complex sp = mode.kappa + lambda;
  const Complex sm = lambda - mode.kappa;
  const Real al = geometry.left(l);
  const Real bl = geometry.right(l);

  Matrix2c at_left, at_right;
  at_left << sp * std::exp(-i * beta * al), sm * std::exp(i * beta * al), Complex(0), Complex(0);
  at_right << Complex(0), Complex(0), sm * std::exp(-i * beta * bl), sp * std::exp(i * beta * bl);

  InterfaceMatrices m;
  m.self = at_left + at_right;
  m.to_prev = l >= 2 ? at_left : Matrix2c::Zero();
  m.to_next = l <= geometry.subdomains - 1 ? at_right : Matrix2c::Zero();
  return m;
}

Matrix2c coupling_to_prev(const Mode& mode, Complex lambda,
                          const DecompositionGeometry& geometry, int l) {
  if (l < 2) {
    return Matrix2c::Zero();
  }
  const InterfaceMatrices here = interface_matrices(mode, lambda, geometry, l);
  const InterfaceMatrices prev = interface_matrices(mode, lambda, geometry, l - 1);
  return here.to_prev * invert_interface(prev.self);
}

Matrix2c coupling_to_next(const Mode& mode, Complex lambda,
                          const DecompositionGeometry& geometry, int l) {
  if (l > geometry.subdomains - 1) {
    return Matrix2c::Zero();
  }
  const InterfaceMatrices here = interface_matrices(mode, lambda, geometry, l);
  const InterfaceMatrices next = interface_matrices(mode, lambda, geometry, l + 1);
  return here.to_next * invert_interface(next.self);
}

SchwarzBlock schwarz_block(const Mode& mode, Complex lambda, Real core_length, Real overlap) {
  if (!(core_length > 0) || !(overlap > 0)) {
    throw DomainError("core length and overlap must be positive");
  }
  const Complex i(0, 1);
  const Complex beta = mode.beta;
  const Complex kappa = mode.kappa;
  // All exponents below have nonnegative decay for Im beta >= 0; the raw
  // denominator (kappa+lambda)^2 E - (lambda-kappa)^2 / E would overflow for
  // strongly evanescent modes, so numerator and denominator are rescaled by E
  // with E = exp(i beta (L + 2 delta)).
  auto E = [&](Real t) { return std::exp(i * beta * t); };
  const Complex sp2 = (kappa + lambda) * (kappa + lambda);
  const Complex sm2 = (lambda - kappa) * (lambda - kappa);
  const Real len = core_length + 2 * overlap;
  const Complex den = sp2 * E(2 * len) - sm2;
  const Real scale = std::max(std::abs(sp2), std::abs(sm2));
  if (!(std::abs(den) > 1e-13 * scale * std::abs(E(len)))) {
    std::ostringstream msg;
    msg << "coupling denominator is numerically singular at beta=" << beta
        << ", lambda=" << lambda;
    throw SingularDenominatorError(msg.str());
  }

  SchwarzBlock block;
  block.a = (lambda * lambda - kappa * kappa) *
            (E(2 * core_length + 3 * overlap) - E(overlap)) / den;
  block.b = (sp2 * E(core_length + 3 * overlap) - sm2 * E(core_length + overlap)) / den;
  block.mode = mode;
  block.lambda = lambda;
  block.core_length = core_length;
  block.overlap = overlap;
  return block;
}

Real limiting_radius(const SchwarzBlock& block) {
  return std::max(std::abs(block.a + block.b), std::abs(block.a - block.b));
}

bool outside_limit_theorem(const SchwarzBlock& block) {
  const Real scale = std::abs(block.a) + std::abs(block.b);
  if (scale == 0) {
    return true;
  }
  return std::abs(block.a) <= 1e-13 * scale || std::abs(block.b) <= 1e-13 * scale;
}

DictionaryReport dictionary_check(const SchwarzBlock& te, const SchwarzBlock& tm,
                                  const TransmissionSpec& spec) {
  if (te.mode.family != ModeFamily::TE || tm.mode.family != ModeFamily::TM) {
    throw DomainError("dictionary check expects a TE block and a TM block");
  }
  if (!(std::abs(te.mode.beta - tm.mode.beta) <= 1e-12 * std::abs(te.mode.beta))) {
    throw DomainError("dictionary check needs matched axial wavenumbers");
  }
  if (te.core_length != tm.core_length || te.overlap != tm.overlap) {
    throw DomainError("dictionary check needs matching geometry");
  }
  DictionaryReport report{};
  const Complex expected_a =
      spec.kind() == TransmissionSpec::Kind::Impedance ? -tm.a : tm.a;
  report.a_residual = std::abs(te.a - expected_a);
  report.b_residual = std::abs(te.b - tm.b);
  report.radius_difference = std::abs(limiting_radius(te) - limiting_radius(tm));
  return report;
}

BlockToeplitzOperator::BlockToeplitzOperator(const SchwarzBlock& block, int subdomains)
    : block_(block), a_(block.a), b_(block.b), n_(subdomains) {
  if (subdomains < 2) {
    throw DomainError("iteration operator needs at least two subdomains");
  }
}

ComplexMatrix BlockToeplitzOperator::assemble() const {
  ComplexMatrix m = ComplexMatrix::Zero(size(), size());
  for (int l = 1; l <= n_; ++l) {
    const Index row = 2 * (l - 1);
    if (l >= 2) {
      m(row, 2 * (l - 2)) = b_;
      m(row, 2 * (l - 2) + 1) = a_;
    }
    if (l <= n_ - 1) {
      m(row + 1, 2 * l) = a_;
      m(row + 1, 2 * l + 1) = b_;
    }
  }
  return m;
}

ComplexVector BlockToeplitzOperator::apply(const Eigen::Ref<const ComplexVector>& x) const {
  if (x.size() != size()) {
    throw DomainError("iteration operator applied to a vector of the wrong size");
  }
  ComplexVector y = ComplexVector::Zero(size());
  for (int l = 2; l <= n_; ++l) {
    y[2 * (l - 1)] = b_ * x[2 * (l - 2)] + a_ * x[2 * (l - 2) + 1];
  }
  for (int l = 1; l <= n_ - 1; ++l) {
    y[2 * (l - 1) + 1] = a_ * x[2 * l] + b_ * x[2 * l + 1];
  }
  return y;
}

std::optional<int> nilpotency_degree(const BlockToeplitzOperator& op, Real tol) {
  const ComplexMatrix base = op.assemble();
  auto inf_norm = [](const ComplexMatrix& m) {
    return m.cwiseAbs().rowwise().sum().maxCoeff();
  };
  const Real norm_base = inf_norm(base);
  if (norm_base == 0) {
    return 1;
  }
  // Compare in log space: tol * ||I||^p overflows for large p otherwise.
  const Real log_tol = std::log(tol) + std::log(norm_base);
  ComplexMatrix power = base;
  const int max_degree = 2 * op.subdomains();
  for (int p = 1; p <= max_degree; ++p) {
    const Real norm_p = inf_norm(power);
    if (norm_p == 0 || std::log(norm_p) <= log_tol + static_cast<Real>(p - 1) * std::log(norm_base)) {
      return p;
    }
    if (p < max_degree) {
      power = power * base;
    }
  }
  return std::nullopt;
}

}  // namespace wgs
