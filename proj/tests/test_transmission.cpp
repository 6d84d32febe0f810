#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wgschwarz/transmission.hpp"
#include "wgschwarz/types.hpp"

using namespace wgs;

TEST_SUITE("transmission") {
  TEST_CASE("impedance symbol is -ik for every family") {
    const Wavenumber k10(Complex(10, 0));
    const Wavenumber kc(Complex(10, 1));
    const Mode te = make_mode(ModeFamily::TE, 1, 6.0, k10);
    const Mode tm = make_mode(ModeFamily::TM, 1, 6.0, k10);
    CHECK(impedance_symbol(te, k10) == Complex(0, -10));
    CHECK(impedance_symbol(tm, k10) == Complex(0, -10));
    const Mode lossy = make_mode(ModeFamily::TE, 1, 6.0, kc);
    CHECK(impedance_symbol(lossy, kc) == Complex(1, -10));
  }

  TEST_CASE("exact transparent symbol is -kappa") {
    const Wavenumber k(Complex(10, 0));
    CHECK(dtn_symbol(ModeFamily::TE, k, Complex(8, 0)) == Complex(0, -8));
    CHECK(dtn_symbol(ModeFamily::TM, k, Complex(8, 0)) == Complex(0, -12.5));
  }

  TEST_CASE("undamped layer reduces to the cotangent formula") {
    // sigma = 0, propagative beta: lambda = kappa_factor * cot(beta l) with
    // lambda = -i beta (1+q)/(1-q) = beta cot(beta l) for TE.
    const Wavenumber k(Complex(10, 0));
    const Complex beta(8, 0);
    const Complex lam = pml_symbol(ModeFamily::TE, k, beta, 0.0, 0.1);
    CHECK(lam.real() == doctest::Approx(8.0 / std::tan(0.8)).epsilon(1e-12));
    CHECK(std::abs(lam.imag()) <= 1e-12 * std::abs(lam.real()));
  }

  TEST_CASE("undamped layer at an interior resonance throws") {
    // 2 beta l = 2 pi makes q = 1 exactly.
    const Wavenumber k(Complex(10, 0));
    const Complex beta(8, 0);
    CHECK_THROWS_AS(pml_symbol(ModeFamily::TE, k, beta, 0.0, std::numbers::pi / 8),
                    PmlResonanceError);
  }

  TEST_CASE("strong absorption recovers the exact transparent symbol") {
    const Wavenumber k(Complex(10, 0));
    const Complex beta(8, 0);
    const Complex lam = pml_symbol(ModeFamily::TE, k, beta, 50.0, 1.0);
    CHECK(std::abs(lam - Complex(0, -8)) <= 1e-10);
    // Same limit for TM.
    const Complex lam_tm = pml_symbol(ModeFamily::TM, k, beta, 50.0, 1.0);
    CHECK(std::abs(lam_tm - Complex(0, -12.5)) <= 1e-10);
  }

  TEST_CASE("evanescent modes see a decaying layer even without absorption") {
    const Wavenumber k(Complex(10, 0));
    const Complex beta(0, 7.0);
    const Complex lam = pml_symbol(ModeFamily::TE, k, beta, 0.0, 1.0);
    // q = exp(-14), so lambda is close to -kappa = 7 (real).
    CHECK(std::abs(lam - Complex(7, 0)) <= 1e-4);
  }

  TEST_CASE("spec validation") {
    CHECK_THROWS_AS(TransmissionSpec::pml(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(TransmissionSpec::pml(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(TransmissionSpec::pml(1.0, 0.0), DomainError);
    CHECK_NOTHROW(TransmissionSpec::pml(1.0, 0.5));
    CHECK_THROWS_AS(TransmissionSpec::impedance().pml_params(), Error);
    CHECK(std::string(TransmissionSpec::impedance().name()) == "impedance");
    CHECK(std::string(TransmissionSpec::pml(1, 1).name()) == "pml");
    CHECK(std::string(TransmissionSpec::dtn().name()) == "dtn");
  }

  TEST_CASE("dispatch matches the direct symbol functions") {
    const Wavenumber k(Complex(10, 0.5));
    const Mode mode = make_mode(ModeFamily::TM, 1, 4.0, k);
    CHECK(transmission_symbol(mode, k, TransmissionSpec::impedance()) ==
          impedance_symbol(mode, k));
    CHECK(transmission_symbol(mode, k, TransmissionSpec::dtn()) ==
          dtn_symbol(mode.family, k, mode.beta));
    CHECK(transmission_symbol(mode, k, TransmissionSpec::pml(2.0, 0.3)) ==
          pml_symbol(mode.family, k, mode.beta, 2.0, 0.3));
  }
}
