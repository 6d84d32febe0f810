#include "wgschwarz/modal.hpp"

#include <cmath>
#include <sstream>

namespace wgs {

Wavenumber::Wavenumber(Complex k) : k_(k) {
  if (!(std::abs(k) > 0)) {
    throw DomainError("wavenumber must be nonzero");
  }
  if (k.imag() < 0) {
    throw DomainError("wavenumber must have nonnegative imaginary part");
  }
}

const char* to_string(ModeFamily family) {
  switch (family) {
    case ModeFamily::TE:
      return "te";
    case ModeFamily::TM:
      return "tm";
    case ModeFamily::TEM:
      return "tem";
  }
  return "?";
}

const char* to_string(ModeClass cls) {
  return cls == ModeClass::Propagative ? "propagative" : "evanescent";
}

Complex axial_wavenumber(const Wavenumber& k, Real r, Real cutoff_tol) {
  const Complex w = k.value() * k.value() - Complex(r * r);
  const Real scale = std::max({std::norm(k.value()), r * r, 1e-300});
  if (std::abs(w) <= cutoff_tol * scale) {
    std::ostringstream msg;
    msg << "mode at r=" << r << " is within the cut-off tolerance of k=" << k.value();
    throw CutoffError(msg.str());
  }
  Complex beta = std::sqrt(w);
  if (beta.imag() < 0) {
    beta = -beta;
  }
  if (beta.imag() == 0 && beta.real() < 0) {
    beta = -beta;
  }
  return beta;
}

Complex modal_symbol(ModeFamily family, const Wavenumber& k, Complex beta) {
  const Complex i(0, 1);
  switch (family) {
    case ModeFamily::TE:
      return i * beta;
    case ModeFamily::TM:
      if (!(std::abs(beta) > 0)) {
        throw DomainError("TM modal symbol needs a nonzero axial wavenumber");
      }
      return i * k.value() * k.value() / beta;
    case ModeFamily::TEM:
      return i * k.value();
  }
  throw DomainError("unknown mode family");
}

Mode make_mode(ModeFamily family, int index, Real r, const Wavenumber& k, Real cutoff_tol) {
  Mode mode;
  mode.family = family;
  mode.index = index;
  if (family == ModeFamily::TEM) {
    mode.r = 0;
    mode.beta = k.value();
  } else {
    mode.r = r;
    mode.beta = axial_wavenumber(k, r, cutoff_tol);
  }
  mode.kappa = modal_symbol(family, k, mode.beta);
  mode.classification = std::abs(mode.beta.imag()) <= 1e-12 * std::abs(mode.beta)
                            ? ModeClass::Propagative
                            : ModeClass::Evanescent;
  return mode;
}

std::vector<Mode> build_mode_catalog(const CrossSection& section, const Wavenumber& k,
                                     int per_family, const std::vector<ModeFamily>& families,
                                     std::vector<std::string>* warnings) {
  if (per_family <= 0) {
    throw DomainError("mode catalog needs a positive per-family count");
  }
  std::vector<Mode> catalog;
  auto add_family = [&](ModeFamily family) {
    if (family == ModeFamily::TEM) {
      const int n_tem = std::min(tem_count(section), per_family);
      for (int idx = 1; idx <= n_tem; ++idx) {
        catalog.push_back(make_mode(ModeFamily::TEM, idx, 0, k));
      }
      return;
    }
    const BoundaryFamily bc =
        family == ModeFamily::TE ? BoundaryFamily::Neumann : BoundaryFamily::Dirichlet;
    const TransverseSpectrum spectrum = transverse_spectrum(section, bc, per_family);
    for (std::size_t i = 0; i < spectrum.wavenumbers.size(); ++i) {
      try {
        catalog.push_back(
            make_mode(family, static_cast<int>(i) + 1, spectrum.wavenumbers[i], k));
      } catch (const CutoffError& e) {
        if (warnings) {
          std::ostringstream msg;
          msg << "skipping " << to_string(family) << " mode " << i + 1 << ": " << e.what();
          warnings->push_back(msg.str());
        }
      }
    }
  };
  for (ModeFamily family : families) {
    add_family(family);
  }
  return catalog;
}

}  // namespace wgs
