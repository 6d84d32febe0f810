#include "wgschwarz/transmission.hpp"

#include <cmath>
#include <sstream>

namespace wgs {

TransmissionSpec TransmissionSpec::impedance() {
  TransmissionSpec spec;
  spec.kind_ = Kind::Impedance;
  return spec;
}

TransmissionSpec TransmissionSpec::pml(Real sigma, Real length) {
  if (!(sigma > 0)) {
    throw DomainError("absorbing layer strength must be positive");
  }
  if (!(length > 0)) {
    throw DomainError("absorbing layer thickness must be positive");
  }
  TransmissionSpec spec;
  spec.kind_ = Kind::Pml;
  spec.pml_ = {sigma, length};
  return spec;
}

TransmissionSpec TransmissionSpec::dtn() {
  TransmissionSpec spec;
  spec.kind_ = Kind::Dtn;
  return spec;
}

const PmlParams& TransmissionSpec::pml_params() const {
  if (kind_ != Kind::Pml) {
    throw DomainError("transmission spec has no absorbing-layer parameters");
  }
  return pml_;
}

const char* TransmissionSpec::name() const {
  switch (kind_) {
    case Kind::Impedance:
      return "impedance";
    case Kind::Pml:
      return "pml";
    case Kind::Dtn:
      return "dtn";
  }
  return "?";
}

Complex impedance_symbol(const Mode&, const Wavenumber& k) {
  return Complex(0, -1) * k.value();
}

Complex pml_symbol(ModeFamily family, const Wavenumber& k, Complex beta, Real sigma,
                   Real length) {
  if (sigma < 0 || !(length > 0)) {
    throw DomainError("absorbing layer needs sigma >= 0 and positive thickness");
  }
  const Complex i(0, 1);
  const Complex q = std::exp(2.0 * i * beta * (1.0 + i * sigma) * length);
  const Complex den = 1.0 - q;
  if (std::abs(den) <= 1e-12) {
    std::ostringstream msg;
    msg << "absorbing layer resonance: |1-q|=" << std::abs(den) << " at beta=" << beta
        << ", sigma=" << sigma << ", length=" << length;
    throw PmlResonanceError(msg.str());
  }
  return -modal_symbol(family, k, beta) * (1.0 + q) / den;
}

Complex dtn_symbol(ModeFamily family, const Wavenumber& k, Complex beta) {
  return -modal_symbol(family, k, beta);
}

Complex transmission_symbol(const Mode& mode, const Wavenumber& k, const TransmissionSpec& spec) {
  switch (spec.kind()) {
    case TransmissionSpec::Kind::Impedance:
      return impedance_symbol(mode, k);
    case TransmissionSpec::Kind::Pml:
      return pml_symbol(mode.family, k, mode.beta, spec.pml_params().sigma,
                        spec.pml_params().length);
    case TransmissionSpec::Kind::Dtn:
      return dtn_symbol(mode.family, k, mode.beta);
  }
  throw DomainError("unknown transmission kind");
}

}  // namespace wgs
