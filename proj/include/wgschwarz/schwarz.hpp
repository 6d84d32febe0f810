#pragma once

#include <optional>

#include "wgschwarz/modal.hpp"
#include "wgschwarz/transmission.hpp"
#include "wgschwarz/types.hpp"

namespace wgs {

// Strip decomposition of the guide axis: subdomain l = 1..N spans
// [left(l), right(l)] with left(l) = (l-1)(L + delta) and right(l) - left(l)
// = L + 2 delta, so neighbours overlap on a band of width delta.
struct DecompositionGeometry {
  Real core_length;  // L
  Real overlap;      // delta
  int subdomains;    // N

  DecompositionGeometry(Real core_length_, Real overlap_, int subdomains_);

  Real left(int l) const;
  Real right(int l) const;
};

// Per-mode interface matrices of one subdomain row: `to_prev` couples to
// subdomain l-1 (zero for l = 1), `to_next` to l+1 (zero for l = N), and
// `self` is the subdomain's own boundary matrix, which always carries both
// end contributions. det(self) is independent of l. Entries scale like
// exp(|Im beta| * right(l)); meant for small l and diagnostics, the sweeps
// use the closed-form couplings instead.
struct InterfaceMatrices {
  Matrix2c to_prev;
  Matrix2c to_next;
  Matrix2c self;
};

InterfaceMatrices interface_matrices(const Mode& mode, Complex lambda,
                                     const DecompositionGeometry& geometry, int l);

// Left/right coupling blocks K- = M^{l,l-1} [M^{l-1,l-1}]^{-1} and
// K+ = M^{l,l+1} [M^{l+1,l+1}]^{-1}; both are l-independent and equal
// [[b, a], [0, 0]] and [[0, 0], [a, b]] for the couplings below.
Matrix2c coupling_to_prev(const Mode& mode, Complex lambda,
                          const DecompositionGeometry& geometry, int l);
Matrix2c coupling_to_next(const Mode& mode, Complex lambda,
                          const DecompositionGeometry& geometry, int l);

// Scalar couplings (a, b) of one mode's Schwarz iteration. Computed in a
// scaled form in which every exponential decays for Im beta >= 0, so strongly
// evanescent modes cannot overflow.
struct SchwarzBlock {
  Complex a;
  Complex b;
  Mode mode;
  Complex lambda;
  Real core_length = 0;
  Real overlap = 0;
};

SchwarzBlock schwarz_block(const Mode& mode, Complex lambda, Real core_length, Real overlap);

// Limit of the per-mode spectral radius as the number of subdomains grows:
// max(|a+b|, |a-b|). Valid as a limit only when both couplings are nonzero;
// `outside_limit_theorem` flags the degenerate cases.
Real limiting_radius(const SchwarzBlock& block);
bool outside_limit_theorem(const SchwarzBlock& block);

// TE/TM correspondence at matched axial wavenumber: under the impedance
// condition a_te = -a_tm, under layer/exact conditions a_te = a_tm, and
// b_te = b_tm in all cases, so the limiting radii coincide.
struct DictionaryReport {
  Real a_residual;
  Real b_residual;
  Real radius_difference;
};

DictionaryReport dictionary_check(const SchwarzBlock& te, const SchwarzBlock& tm,
                                  const TransmissionSpec& spec);

// Block Toeplitz iteration operator on the 2N interface traces: zero block
// diagonal, K+ on the superdiagonal, K- on the subdiagonal.
class BlockToeplitzOperator {
 public:
  BlockToeplitzOperator(const SchwarzBlock& block, int subdomains);

  int subdomains() const { return n_; }
  Index size() const { return 2 * static_cast<Index>(n_); }
  Complex coupling_a() const { return a_; }
  Complex coupling_b() const { return b_; }
  const SchwarzBlock& block() const { return block_; }

  ComplexMatrix assemble() const;

  // Matrix-free action; rows 1 and 2N are always zero.
  ComplexVector apply(const Eigen::Ref<const ComplexVector>& x) const;

 private:
  SchwarzBlock block_;
  Complex a_;
  Complex b_;
  int n_;
};

// Smallest p <= 2N with ||I^p||_inf <= tol * ||I||_inf^p (nullopt if none).
// a = 0 makes the operator nilpotent of degree at most N.
std::optional<int> nilpotency_degree(const BlockToeplitzOperator& op, Real tol = 1e-12);

}  // namespace wgs
