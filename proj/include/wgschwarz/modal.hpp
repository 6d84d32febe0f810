#pragma once

#include <string>
#include <vector>

#include "wgschwarz/cross_section.hpp"
#include "wgschwarz/types.hpp"

namespace wgs {

// Free-space wavenumber. Im k >= 0 (lossy-medium convention) and k != 0.
class Wavenumber {
 public:
  explicit Wavenumber(Complex k);
  Complex value() const { return k_; }
  Real re() const { return k_.real(); }
  Real im() const { return k_.imag(); }

 private:
  Complex k_;
};

enum class ModeFamily { TE, TM, TEM };
enum class ModeClass { Propagative, Evanescent };

const char* to_string(ModeFamily family);
const char* to_string(ModeClass cls);

struct Mode {
  ModeFamily family = ModeFamily::TE;
  int index = 0;  // 1-based position within the family spectrum
  Real r = 0;     // transverse wavenumber (0 for TEM)
  Complex beta;   // axial wavenumber on the branch Im >= 0
  Complex kappa;  // modal symbol of the transparent boundary operator
  ModeClass classification = ModeClass::Propagative;
};

// beta = sqrt(k^2 - r^2) on the branch Im beta >= 0, with Re beta > 0 breaking
// the real tie. Throws CutoffError when |k^2 - r^2| <= cutoff_tol * scale.
Complex axial_wavenumber(const Wavenumber& k, Real r, Real cutoff_tol = 1e-10);

// kappa: TE -> i beta, TM -> i k^2 / beta, TEM -> i k.
Complex modal_symbol(ModeFamily family, const Wavenumber& k, Complex beta);

// Builds one mode; TEM ignores r and uses beta = k.
Mode make_mode(ModeFamily family, int index, Real r, const Wavenumber& k,
               Real cutoff_tol = 1e-10);

// Concatenated per-family catalogs (TE, then TM, then TEM), each ascending in
// r. Modes at cut-off are dropped with a note appended to `warnings`.
std::vector<Mode> build_mode_catalog(const CrossSection& section, const Wavenumber& k,
                                     int per_family, const std::vector<ModeFamily>& families,
                                     std::vector<std::string>* warnings = nullptr);

}  // namespace wgs
