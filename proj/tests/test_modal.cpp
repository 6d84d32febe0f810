#include <doctest.h>

#include <cmath>
#include <random>

#include "wgschwarz/modal.hpp"
#include "wgschwarz/types.hpp"

using namespace wgs;

TEST_SUITE("modal") {
  TEST_CASE("wavenumber validation") {
    CHECK_THROWS_AS(Wavenumber(Complex(0, 0)), DomainError);
    CHECK_THROWS_AS(Wavenumber(Complex(10, -0.5)), DomainError);
    CHECK(Wavenumber(Complex(10, 0)).re() == 10.0);
    CHECK(Wavenumber(Complex(10, 2)).im() == 2.0);
  }

  TEST_CASE("axial wavenumber closed forms") {
    const Wavenumber k(Complex(10, 0));
    CHECK(axial_wavenumber(k, 6.0) == Complex(8, 0));
    const Complex ev = axial_wavenumber(k, 12.0);
    CHECK(ev.real() == 0.0);
    CHECK(ev.imag() == doctest::Approx(6.6332495807108).epsilon(1e-10));
  }

  TEST_CASE("branch: Im beta >= 0, real tie broken by Re beta > 0") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<Real> kr(0.5, 20), ki(0, 3), rr(0, 25);
    for (int i = 0; i < 200; ++i) {
      const Wavenumber k(Complex(kr(gen), i % 2 ? ki(gen) : 0.0));
      const Real r = rr(gen);
      Complex beta;
      try {
        beta = axial_wavenumber(k, r);
      } catch (const CutoffError&) {
        continue;
      }
      CAPTURE(k.value());
      CAPTURE(r);
      CHECK(beta.imag() >= 0.0);
      if (beta.imag() == 0.0) {
        CHECK(beta.real() > 0.0);
      }
      // It actually squares back.
      const Complex target = k.value() * k.value() - Complex(r * r);
      CHECK(std::abs(beta * beta - target) <= 1e-12 * std::max(std::abs(target), 1.0));
    }
  }

  TEST_CASE("cut-off raises a dedicated error") {
    const Wavenumber k(Complex(10, 0));
    CHECK_THROWS_AS(axial_wavenumber(k, 10.0), CutoffError);
    CHECK_THROWS_AS(axial_wavenumber(k, 10.0 * (1 + 1e-12)), CutoffError);
    CHECK_NOTHROW(axial_wavenumber(k, 10.0 * (1 + 1e-4)));
  }

  TEST_CASE("modal symbols per family") {
    const Wavenumber k(Complex(10, 0));
    CHECK(modal_symbol(ModeFamily::TE, k, Complex(8, 0)) == Complex(0, 8));
    CHECK(modal_symbol(ModeFamily::TM, k, Complex(8, 0)) == Complex(0, 12.5));
    CHECK(modal_symbol(ModeFamily::TEM, k, k.value()) == Complex(0, 10));
  }

  TEST_CASE("make_mode classifies propagative vs evanescent") {
    const Wavenumber k(Complex(10, 0));
    const Mode prop = make_mode(ModeFamily::TE, 1, 6.0, k);
    CHECK(prop.classification == ModeClass::Propagative);
    CHECK(prop.beta == Complex(8, 0));
    CHECK(prop.kappa == Complex(0, 8));

    const Mode evan = make_mode(ModeFamily::TM, 2, 12.0, k);
    CHECK(evan.classification == ModeClass::Evanescent);
    CHECK(evan.beta.real() == 0.0);

    const Wavenumber damped(Complex(10, 1));
    const Mode lossy = make_mode(ModeFamily::TE, 1, 6.0, damped);
    CHECK(lossy.classification == ModeClass::Evanescent);
  }

  TEST_CASE("TEM modes ride at beta = k") {
    const Wavenumber k(Complex(7, 0.3));
    const Mode tem = make_mode(ModeFamily::TEM, 1, 0.0, k);
    CHECK(tem.r == 0.0);
    CHECK(tem.beta == k.value());
    CHECK(tem.kappa == Complex(0, 1) * k.value());
  }

  TEST_CASE("family and class names") {
    CHECK(std::string(to_string(ModeFamily::TE)) == "te");
    CHECK(std::string(to_string(ModeFamily::TM)) == "tm");
    CHECK(std::string(to_string(ModeFamily::TEM)) == "tem");
    CHECK(std::string(to_string(ModeClass::Propagative)) == "propagative");
    CHECK(std::string(to_string(ModeClass::Evanescent)) == "evanescent");
  }

  TEST_CASE("catalog: families, ordering, 1-based indices") {
    const CrossSection square = CrossSection::rectangle(1, 1);
    const Wavenumber k(Complex(10, 0));
    std::vector<std::string> warnings;
    const auto catalog = build_mode_catalog(square, k, 8,
                                            {ModeFamily::TE, ModeFamily::TM}, &warnings);
    CHECK(warnings.empty());
    CHECK(catalog.size() == 16);
    int te_seen = 0, tm_seen = 0;
    Real last_te = 0, last_tm = 0;
    for (const Mode& mode : catalog) {
      if (mode.family == ModeFamily::TE) {
        ++te_seen;
        CHECK(mode.index == te_seen);
        CHECK(mode.r >= last_te);
        last_te = mode.r;
      } else {
        ++tm_seen;
        CHECK(mode.index == tm_seen);
        CHECK(mode.r >= last_tm);
        last_tm = mode.r;
      }
    }
    CHECK(te_seen == 8);
    CHECK(tm_seen == 8);
  }

  TEST_CASE("catalog drops cut-off modes with a warning") {
    // k equal to the first TE wavenumber pi puts two degenerate modes at
    // cut-off; they must be skipped, not crash the catalog.
    const CrossSection square = CrossSection::rectangle(1, 1);
    const Wavenumber k(Complex(std::acos(-1.0), 0));
    std::vector<std::string> warnings;
    const auto catalog = build_mode_catalog(square, k, 4, {ModeFamily::TE}, &warnings);
    CHECK(warnings.size() == 2);
    for (const Mode& mode : catalog) {
      CHECK(mode.r != doctest::Approx(std::acos(-1.0)).epsilon(1e-12));
    }
    CHECK(catalog.size() == 2);
  }

  TEST_CASE("catalog includes TEM modes for multiply connected sections") {
    const CrossSection ann = CrossSection::annulus(0.5, 1.0);
    const Wavenumber k(Complex(10, 0));
    const auto catalog = build_mode_catalog(ann, k, 2,
                                            {ModeFamily::TE, ModeFamily::TM, ModeFamily::TEM});
    int tem_seen = 0;
    for (const Mode& mode : catalog) {
      if (mode.family == ModeFamily::TEM) {
        ++tem_seen;
        CHECK(mode.beta == k.value());
      }
    }
    CHECK(tem_seen == 1);
  }
}
