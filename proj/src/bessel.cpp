#include "wgschwarz/bessel.hpp"

#include <cmath>
#include <sstream>

namespace wgs::bessel {
namespace {

constexpr Real kScanStep = 0.05;

// Safeguarded Newton on a strict sign-change bracket. Converged when the
// bracket is tighter than 1e-12 * max(1, |x|) and |f(x)| <= 1e-12.
template <class F, class DF>
Real refine_zero(F&& f, DF&& df, Real lo, Real hi) {
  Real flo = f(lo);
  Real fhi = f(hi);
  Real x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    Real fx = f(x);
    if ((fx < 0) == (flo < 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(x)) && std::abs(fx) <= 1e-12) {
      return x;
    }
    Real dfx = df(x);
    Real step = dfx != 0.0 ? fx / dfx : 0.0;
    Real next = x - step;
    if (dfx == 0.0 || next <= lo || next >= hi) {
      next = 0.5 * (lo + hi);
    }
    x = next;
  }
  std::ostringstream msg;
  msg << "zero refinement stalled in bracket [" << lo << ", " << hi << "], f(lo)=" << flo
      << ", f(hi)=" << fhi;
  throw NumericError(msg.str());
}

template <class F, class DF>
std::vector<Real> scan_zeros(F&& f, DF&& df, Real x_max) {
  std::vector<Real> zeros;
  if (!(x_max > 0)) {
    return zeros;
  }
  Real a = 1e-6;
  Real fa = f(a);
  for (Real b = kScanStep; a < x_max; b += kScanStep) {
    b = std::min(b, x_max);
    Real fb = f(b);
    if (fa * fb < 0) {
      zeros.push_back(refine_zero(f, df, a, b));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

}  // namespace

Real j(int order, Real x) {
  if (order < 0) {
    throw DomainError("Bessel order must be nonnegative");
  }
  return std::cyl_bessel_j(static_cast<Real>(order), x);
}

Real j_prime(int order, Real x) {
  if (order == 0) {
    return -j(1, x);
  }
  return 0.5 * (j(order - 1, x) - j(order + 1, x));
}

std::vector<Real> j_zeros(int order, Real x_max) {
  auto f = [order](Real x) { return j(order, x); };
  auto df = [order](Real x) { return j_prime(order, x); };
  return scan_zeros(f, df, x_max);
}

std::vector<Real> j_prime_zeros(int order, Real x_max) {
  auto f = [order](Real x) { return j_prime(order, x); };
  // x^2 J'' = (m^2 - x^2) J - x J'
  auto df = [order](Real x) {
    return ((order * order - x * x) * j(order, x) - x * j_prime(order, x)) / (x * x);
  };
  return scan_zeros(f, df, x_max);
}

}  // namespace wgs::bessel
