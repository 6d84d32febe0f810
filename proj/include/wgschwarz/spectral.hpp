#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wgschwarz/schwarz.hpp"
#include "wgschwarz/types.hpp"

namespace wgs {

enum class SpectrumMethod { DenseQR, PowerIteration };

struct SpectrumResult {
  ComplexVector eigenvalues;
  Real radius = 0;
  SpectrumMethod method = SpectrumMethod::DenseQR;
  ComplexMatrix eigenvectors;  // empty unless requested
};

// Full spectrum of a dense complex matrix (Hessenberg + shifted QR).
SpectrumResult eigenvalues_dense(const Eigen::Ref<const ComplexMatrix>& matrix,
                                 bool with_vectors = false);

// Spectral radius of the iteration operator via a dense solve; refuses
// dimensions beyond `dense_cap` (use power_iteration there instead).
Real spectral_radius(const BlockToeplitzOperator& op, Index dense_cap = 2000);

using LinearMap = std::function<ComplexVector(const ComplexVector&)>;

struct PowerIterationResult {
  Real estimate = 0;
  bool converged = false;
  int iterations = 0;
};

// Rayleigh-quotient modulus estimate from a seeded random start. `converged`
// is false when the estimate keeps oscillating (e.g. a conjugate pair of
// dominant eigenvalues); a collapsing iterate reports estimate 0 with
// `converged` true (nilpotent case).
PowerIterationResult power_iteration(const LinearMap& map, Index dim, int max_iters, Real tol,
                                     std::uint64_t seed);

struct IterationTrace {
  std::vector<Real> residuals;  // one entry per iteration
  bool converged = false;
  int iterations = 0;
};

struct GmresResult {
  ComplexVector solution;
  IterationTrace trace;
};

// GMRES with modified Gram-Schmidt Arnoldi and Givens rotations; restart = 0
// means full (no restart). Stops when the relative residual drops below tol.
// The final residual is recomputed from the returned solution.
GmresResult gmres_solve(const LinearMap& op, const ComplexVector& rhs, Real tol = 1e-5,
                        int restart = 0, int max_iters = 2000);

// Stationary run x <- I x; residuals are ||x_n||_inf and convergence means
// ||x_n||_inf <= tol * ||x_0||_inf.
IterationTrace fixed_point_run(const BlockToeplitzOperator& op, const ComplexVector& initial,
                               Real tol, int max_iters);

// Complex standard normal vector from a seeded Box-Muller transform; the
// sequence depends only on the seed, not on any library distribution.
ComplexVector seeded_gaussian(Index n, std::uint64_t seed);

}  // namespace wgs
