#pragma once

#include "wgschwarz/modal.hpp"
#include "wgschwarz/types.hpp"

namespace wgs {

struct PmlParams {
  Real sigma = 1;   // absorption strength
  Real length = 1;  // layer thickness
};

// Transparent-condition approximation placed on the interfaces: the low-order
// impedance condition, an absorbing layer of finite thickness, or the exact
// per-mode operator.
class TransmissionSpec {
 public:
  enum class Kind { Impedance, Pml, Dtn };

  static TransmissionSpec impedance();
  static TransmissionSpec pml(Real sigma, Real length);
  static TransmissionSpec dtn();

  Kind kind() const { return kind_; }
  const PmlParams& pml_params() const;
  const char* name() const;

 private:
  TransmissionSpec() = default;
  Kind kind_ = Kind::Impedance;
  PmlParams pml_;
};

// lambda = -i k for every mode family.
Complex impedance_symbol(const Mode& mode, const Wavenumber& k);

// lambda = -kappa (1+q)/(1-q) with q = exp(2 i beta (1 + i sigma) length).
// sigma = 0 is accepted here (the guard is only the resonance denominator);
// user-facing specs require sigma > 0.
Complex pml_symbol(ModeFamily family, const Wavenumber& k, Complex beta, Real sigma, Real length);

// Exact transparent operator symbol, lambda = -kappa.
Complex dtn_symbol(ModeFamily family, const Wavenumber& k, Complex beta);

Complex transmission_symbol(const Mode& mode, const Wavenumber& k, const TransmissionSpec& spec);

}  // namespace wgs
