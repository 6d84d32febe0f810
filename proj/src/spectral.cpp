#include "wgschwarz/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace wgs {

SpectrumResult eigenvalues_dense(const Eigen::Ref<const ComplexMatrix>& matrix,
                                 bool with_vectors) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw DomainError("dense spectrum needs a nonempty square matrix");
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(matrix, with_vectors);
  if (solver.info() != Eigen::Success) {
    throw NumericError("complex QR iteration failed to converge");
  }
  SpectrumResult result;
  result.eigenvalues = solver.eigenvalues();
  result.radius = result.eigenvalues.cwiseAbs().maxCoeff();
  result.method = SpectrumMethod::DenseQR;
  if (with_vectors) {
    result.eigenvectors = solver.eigenvectors();
  }
  return result;
}

Real spectral_radius(const BlockToeplitzOperator& op, Index dense_cap) {
  if (op.size() > dense_cap) {
    std::ostringstream msg;
    msg << "iteration operator dimension " << op.size() << " exceeds the dense cap " << dense_cap
        << "; use power_iteration";
    throw ResourceError(msg.str());
  }
  return eigenvalues_dense(op.assemble()).radius;
}

ComplexVector seeded_gaussian(Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto uniform = [&gen]() {
    // (0, 1], never 0, so the log below is finite.
    return (static_cast<Real>(gen() >> 11) + 1.0) / 9007199254740993.0;
  };
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) {
    const Real radius = std::sqrt(-2.0 * std::log(uniform()));
    const Real angle = 2.0 * std::numbers::pi_v<Real> * uniform();
    v[i] = Complex(radius * std::cos(angle), radius * std::sin(angle));
  }
  return v;
}

PowerIterationResult power_iteration(const LinearMap& map, Index dim, int max_iters, Real tol,
                                     std::uint64_t seed) {
  if (dim <= 0) {
    throw DomainError("power iteration needs a positive dimension");
  }
  if (max_iters <= 0) {
    throw DomainError("power iteration needs a positive iteration cap");
  }
  ComplexVector x = seeded_gaussian(dim, seed);
  x /= x.norm();
  PowerIterationResult result;
  Real prev = std::nan("");
  int stable = 0;
  for (int it = 1; it <= max_iters; ++it) {
    result.iterations = it;
    const ComplexVector y = map(x);
    const Real ny = y.norm();
    if (!std::isfinite(ny)) {
      throw NumericError("power iteration produced a non-finite iterate");
    }
    if (ny <= 1e-290) {
      // Iterate collapsed: the operator annihilates the Krylov space.
      result.estimate = 0;
      result.converged = true;
      return result;
    }
    const Real estimate = std::abs(x.dot(y));
    x = y / ny;
    if (std::isfinite(prev) && std::abs(estimate - prev) <= tol * std::max(estimate, 1e-30)) {
      ++stable;
    } else {
      stable = 0;
    }
    prev = estimate;
    result.estimate = estimate;
    if (stable >= 3) {
      result.converged = true;
      return result;
    }
  }
  result.converged = false;
  return result;
}

GmresResult gmres_solve(const LinearMap& op, const ComplexVector& rhs, Real tol, int restart,
                        int max_iters) {
  if (max_iters <= 0) {
    throw DomainError("solver needs a positive iteration cap");
  }
  if (!(tol > 0)) {
    throw DomainError("solver tolerance must be positive");
  }
  const Index n = rhs.size();
  GmresResult result;
  result.solution = ComplexVector::Zero(n);
  const Real rhs_norm = rhs.norm();
  if (rhs_norm == 0) {
    result.trace.converged = true;
    return result;
  }

  // In exact arithmetic n steps always suffice, so a Krylov cycle never needs
  // more than n columns; remaining budget is spent on restarts.
  const int cycle = static_cast<int>(
      std::min<Index>(restart > 0 ? restart : max_iters, n));
  ComplexMatrix v(n, cycle + 1);
  ComplexMatrix h = ComplexMatrix::Zero(cycle + 1, cycle);
  ComplexVector g(cycle + 1);
  std::vector<Real> rot_c(cycle);
  std::vector<Complex> rot_s(cycle);

  ComplexVector x = ComplexVector::Zero(n);
  ComplexVector residual = rhs;
  Real residual_norm = rhs_norm;
  int total_iters = 0;
  bool converged = false;

  while (total_iters < max_iters && !converged) {
    v.col(0) = residual / residual_norm;
    g.setZero();
    g[0] = residual_norm;
    int steps = 0;
    bool breakdown = false;
    for (int j = 0; j < cycle && total_iters < max_iters; ++j) {
      ComplexVector w = op(v.col(j));
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const Complex hij = v.col(i).dot(w);
          h(i, j) += hij;
          w -= hij * v.col(i);
        }
      }
      const Real hnext = w.norm();
      h(j + 1, j) = hnext;
      for (int i = 0; i < j; ++i) {
        const Complex t = rot_c[i] * h(i, j) + rot_s[i] * h(i + 1, j);
        h(i + 1, j) = -std::conj(rot_s[i]) * h(i, j) + rot_c[i] * h(i + 1, j);
        h(i, j) = t;
      }
      const Real denom = std::hypot(std::abs(h(j, j)), hnext);
      if (denom == 0) {
        rot_c[j] = 1;
        rot_s[j] = 0;
      } else if (std::abs(h(j, j)) == 0) {
        rot_c[j] = 0;
        rot_s[j] = 1;
      } else {
        rot_c[j] = std::abs(h(j, j)) / denom;
        rot_s[j] = rot_c[j] * (hnext / std::conj(h(j, j)));
      }
      h(j, j) = rot_c[j] * h(j, j) + rot_s[j] * h(j + 1, j);
      h(j + 1, j) = 0;
      g[j + 1] = -std::conj(rot_s[j]) * g[j];
      g[j] = rot_c[j] * g[j];

      ++total_iters;
      ++steps;
      const Real rel = std::abs(g[j + 1]) / rhs_norm;
      if (!std::isfinite(rel)) {
        throw NumericError("GMRES residual became non-finite");
      }
      result.trace.residuals.push_back(rel);
      if (rel <= tol) {
        converged = true;
        break;
      }
      if (hnext <= 1e-14 * rhs_norm) {
        breakdown = true;  // Krylov space is invariant; the residual is final.
        break;
      }
      v.col(j + 1) = w / hnext;
    }
    // Back-substitute the rotated Hessenberg system for this cycle.
    ComplexVector y = ComplexVector::Zero(steps);
    for (int i = steps - 1; i >= 0; --i) {
      Complex sum = g[i];
      for (int jj = i + 1; jj < steps; ++jj) {
        sum -= h(i, jj) * y[jj];
      }
      if (std::abs(h(i, i)) == 0) {
        throw NumericError("GMRES projected system is singular");
      }
      y[i] = sum / h(i, i);
    }
    x += v.leftCols(steps) * y;
    residual = rhs - op(x);
    residual_norm = residual.norm();
    converged = converged || residual_norm <= tol * rhs_norm;
    if (breakdown && !converged) {
      break;  // invariant subspace reached without meeting tol: stop honestly
    }
    h.setZero();
  }

  result.solution = x;
  result.trace.iterations = total_iters;
  if (!result.trace.residuals.empty()) {
    result.trace.residuals.back() = residual_norm / rhs_norm;
  }
  result.trace.converged = residual_norm <= tol * rhs_norm;
  return result;
}

IterationTrace fixed_point_run(const BlockToeplitzOperator& op, const ComplexVector& initial,
                               Real tol, int max_iters) {
  if (max_iters <= 0) {
    throw DomainError("solver needs a positive iteration cap");
  }
  const Real initial_norm = initial.lpNorm<Eigen::Infinity>();
  if (!(initial_norm > 0)) {
    throw DomainError("fixed-point run needs a nonzero initial vector");
  }
  IterationTrace trace;
  ComplexVector x = initial;
  for (int it = 1; it <= max_iters; ++it) {
    x = op.apply(x);
    const Real norm = x.lpNorm<Eigen::Infinity>();
    trace.residuals.push_back(norm);
    trace.iterations = it;
    if (norm <= tol * initial_norm) {
      trace.converged = true;
      return trace;
    }
    if (!std::isfinite(norm) || norm > 1e100 * initial_norm) {
      break;  // clearly diverging; stop before overflow poisons the history
    }
  }
  trace.converged = false;
  return trace;
}

}  // namespace wgs
