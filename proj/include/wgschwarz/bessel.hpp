#pragma once

#include <vector>

#include "wgschwarz/types.hpp"

namespace wgs::bessel {

// Cylindrical Bessel function of the first kind, J_m(x), integer order m >= 0.
Real j(int order, Real x);

// First derivative dJ_m/dx via the standard recurrence; J_0' = -J_1.
Real j_prime(int order, Real x);

// All positive zeros of J_m in (0, x_max], ascending. Zeros are bracketed on
// a fine scan grid (consecutive zeros are separated by more than the grid
// step) and refined by safeguarded Newton until both the bracket width and
// the residual drop below 1e-12 scales; stalls raise NumericError with the
// offending bracket.
std::vector<Real> j_zeros(int order, Real x_max);

// All positive zeros of J_m' in (0, x_max], ascending. The trivial zero of
// J_0' at the origin is not a mode and is excluded by construction.
std::vector<Real> j_prime_zeros(int order, Real x_max);

}  // namespace wgs::bessel
