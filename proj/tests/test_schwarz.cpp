#include <doctest.h>

#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "wgschwarz/schwarz.hpp"
#include "wgschwarz/types.hpp"

using namespace wgs;

namespace {

struct Draw {
  Mode mode;
  Complex lambda;
  Real core_length;
  Real overlap;
};

// Random admissible mode/transmission draws away from cut-off.
Draw random_draw(std::mt19937_64& gen, bool allow_lossy = true) {
  std::uniform_real_distribution<Real> kr(2.0, 20.0), ki(0.0, 2.0), rr(0.0, 25.0);
  std::uniform_real_distribution<Real> len(0.5, 2.0), ov(0.05, 0.3);
  std::uniform_real_distribution<Real> sig(0.5, 5.0), pl(0.05, 1.0);
  std::uniform_int_distribution<int> fam(0, 1), cond(0, 2), lossy(0, 1);
  for (;;) {
    const Complex kv(kr(gen), allow_lossy && lossy(gen) ? ki(gen) : 0.0);
    const Real r = rr(gen);
    if (std::abs(kv * kv - Complex(r * r)) < 1.0) continue;
    const Wavenumber k(kv);
    const Mode mode = make_mode(fam(gen) ? ModeFamily::TM : ModeFamily::TE, 1, r, k);
    Complex lambda;
    switch (cond(gen)) {
      case 0: lambda = impedance_symbol(mode, k); break;
      case 1: lambda = pml_symbol(mode.family, k, mode.beta, sig(gen), pl(gen)); break;
      default: lambda = dtn_symbol(mode.family, k, mode.beta); break;
    }
    return Draw{mode, lambda, len(gen), ov(gen)};
  }
}

}  // namespace

TEST_SUITE("schwarz") {
  TEST_CASE("strip geometry endpoints and overlap width") {
    const DecompositionGeometry geo(1.0, 0.1, 4);
    CHECK(geo.left(1) == 0.0);
    CHECK(geo.right(1) == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(geo.left(2) == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(geo.right(4) == doctest::Approx(4.5).epsilon(1e-15));
    // Neighbours overlap on a band of width delta.
    CHECK(geo.right(1) - geo.left(2) == doctest::Approx(0.1).epsilon(1e-12));
  }

  TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(DecompositionGeometry(0.0, 0.1, 4), DomainError);
    CHECK_THROWS_AS(DecompositionGeometry(1.0, 0.0, 4), DomainError);
    CHECK_THROWS_AS(DecompositionGeometry(1.0, 0.1, 1), DomainError);
    const DecompositionGeometry geo(1.0, 0.1, 4);
    CHECK_THROWS_AS(geo.left(0), DomainError);
    CHECK_THROWS_AS(geo.right(5), DomainError);
  }

  TEST_CASE("interface matrices: boundary rows vanish at the chain ends") {
    const Wavenumber k(Complex(10, 0));
    const Mode mode = make_mode(ModeFamily::TE, 1, 6.0, k);
    const Complex lambda = impedance_symbol(mode, k);
    const DecompositionGeometry geo(1.0, 0.1, 4);
    CHECK(interface_matrices(mode, lambda, geo, 1).to_prev.cwiseAbs().maxCoeff() == 0.0);
    CHECK(interface_matrices(mode, lambda, geo, 4).to_next.cwiseAbs().maxCoeff() == 0.0);
    const auto mid = interface_matrices(mode, lambda, geo, 2);
    CHECK(mid.to_prev.cwiseAbs().maxCoeff() > 0.0);
    CHECK(mid.to_next.cwiseAbs().maxCoeff() > 0.0);
    // to_prev acts only through its first row, to_next through its second.
    CHECK(mid.to_prev.row(1).cwiseAbs().maxCoeff() == 0.0);
    CHECK(mid.to_next.row(0).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("det(self) does not depend on the subdomain index") {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 50; ++trial) {
      const Draw d = random_draw(gen);
      if (std::abs(d.mode.beta.imag()) * 5 * (d.core_length + 2 * d.overlap) > 5.0) {
        continue;  // keep diagnostic-route exponentials moderate
      }
      const DecompositionGeometry geo(d.core_length, d.overlap, 5);
      const Complex det2 = interface_matrices(d.mode, d.lambda, geo, 2).self.determinant();
      const Complex det4 = interface_matrices(d.mode, d.lambda, geo, 4).self.determinant();
      CAPTURE(trial);
      CHECK(std::abs(det2 - det4) <= 1e-10 * std::max(std::abs(det2), 1e-30));
    }
  }

  TEST_CASE("couplings equal the closed-form blocks at every index") {
    std::mt19937_64 gen(22);
    for (int trial = 0; trial < 50; ++trial) {
      const Draw d = random_draw(gen);
      if (std::abs(d.mode.beta.imag()) * 6 * (d.core_length + 2 * d.overlap) > 5.0) {
        continue;
      }
      const DecompositionGeometry geo(d.core_length, d.overlap, 6);
      const SchwarzBlock block = schwarz_block(d.mode, d.lambda, d.core_length, d.overlap);
      Matrix2c k_minus;
      k_minus << block.b, block.a, 0, 0;
      Matrix2c k_plus;
      k_plus << 0, 0, block.a, block.b;
      const Real scale = std::max({1.0, std::abs(block.a), std::abs(block.b)});
      for (int l : {2, 3, 5}) {
        CAPTURE(trial);
        CAPTURE(l);
        CHECK((coupling_to_prev(d.mode, d.lambda, geo, l) - k_minus).cwiseAbs().maxCoeff() <=
              1e-11 * scale);
      }
      for (int l : {2, 4}) {
        CHECK((coupling_to_next(d.mode, d.lambda, geo, l) - k_plus).cwiseAbs().maxCoeff() <=
              1e-11 * scale);
      }
    }
  }

  TEST_CASE("exact transparent condition kills the backward coupling") {
    const Wavenumber k(Complex(10, 0));
    for (Real r : {6.0, 12.0}) {
      const Mode mode = make_mode(ModeFamily::TE, 1, r, k);
      const Complex lambda = -mode.kappa;
      const SchwarzBlock block = schwarz_block(mode, lambda, 1.0, 0.1);
      CHECK(block.a == Complex(0, 0));
      const Complex expected = std::exp(Complex(0, 1) * mode.beta * 1.1);
      CHECK(std::abs(block.b - expected) <= 1e-13);
    }
  }

  TEST_CASE("anti-transparent condition reflects with the inverse exponential") {
    const Wavenumber k(Complex(10, 0));
    const Mode mode = make_mode(ModeFamily::TE, 1, 6.0, k);
    const SchwarzBlock block = schwarz_block(mode, +mode.kappa, 1.0, 0.1);
    CHECK(block.a == Complex(0, 0));
    const Complex expected = std::exp(-Complex(0, 1) * mode.beta * 1.1);
    CHECK(std::abs(block.b - expected) <= 1e-13 * std::abs(expected));
  }

  TEST_CASE("singular interface configurations raise dedicated errors") {
    // lambda = 0 with beta (L + 2 delta) = pi makes both the closed-form
    // denominator and the interface matrix singular.
    const Wavenumber k(Complex(10, 0));
    const Real r = std::sqrt(100.0 - std::numbers::pi * std::numbers::pi);
    const Mode mode = make_mode(ModeFamily::TE, 1, r, k);
    CHECK_THROWS_AS(schwarz_block(mode, Complex(0, 0), 0.8, 0.1), SingularDenominatorError);
    const DecompositionGeometry geo(0.8, 0.1, 3);
    CHECK_THROWS_AS(coupling_to_prev(mode, Complex(0, 0), geo, 2), SingularInterfaceError);
  }

  TEST_CASE("limiting radius and theorem applicability") {
    SchwarzBlock block;
    block.a = Complex(0.3, 0);
    block.b = Complex(0.4, 0);
    CHECK(limiting_radius(block) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(!outside_limit_theorem(block));

    block.a = Complex(0, 0.3);
    CHECK(limiting_radius(block) == doctest::Approx(0.5).epsilon(1e-14));

    block.a = Complex(0, 0);
    CHECK(outside_limit_theorem(block));
    block.a = Complex(0.3, 0);
    block.b = Complex(0, 0);
    CHECK(outside_limit_theorem(block));
  }

  TEST_CASE("TE/TM dictionary at matched axial wavenumber") {
    const Wavenumber k(Complex(10, 0));
    for (Real r : {4.0, 12.0}) {
      const Mode te = make_mode(ModeFamily::TE, 1, r, k);
      const Mode tm = make_mode(ModeFamily::TM, 1, r, k);
      for (const TransmissionSpec& spec :
           {TransmissionSpec::impedance(), TransmissionSpec::pml(2.0, 0.4),
            TransmissionSpec::dtn()}) {
        const SchwarzBlock bte =
            schwarz_block(te, transmission_symbol(te, k, spec), 1.0, 0.1);
        const SchwarzBlock btm =
            schwarz_block(tm, transmission_symbol(tm, k, spec), 1.0, 0.1);
        const DictionaryReport report = dictionary_check(bte, btm, spec);
        CAPTURE(r);
        CAPTURE(spec.name());
        CHECK(report.a_residual <= 1e-13);
        CHECK(report.b_residual <= 1e-13);
        CHECK(report.radius_difference <= 1e-13);
      }
    }
  }

  TEST_CASE("block Toeplitz assembly has the exact sparsity pattern") {
    SchwarzBlock block;
    block.a = Complex(0.25, -0.5);
    block.b = Complex(-0.125, 0.75);
    const BlockToeplitzOperator op(block, 3);
    CHECK(op.size() == 6);
    const ComplexMatrix m = op.assemble();
    ComplexMatrix expected = ComplexMatrix::Zero(6, 6);
    expected(2, 0) = block.b;
    expected(2, 1) = block.a;
    expected(4, 2) = block.b;
    expected(4, 3) = block.a;
    expected(1, 2) = block.a;
    expected(1, 3) = block.b;
    expected(3, 4) = block.a;
    expected(3, 5) = block.b;
    CHECK((m - expected).cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.row(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.row(5).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("matrix-free apply agrees with the assembled matrix") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<Real> u(-1, 1);
    for (int n : {2, 5, 17}) {
      SchwarzBlock block;
      block.a = Complex(u(gen), u(gen));
      block.b = Complex(u(gen), u(gen));
      const BlockToeplitzOperator op(block, n);
      const ComplexMatrix m = op.assemble();
      ComplexVector x(op.size());
      for (Index i = 0; i < x.size(); ++i) {
        x[i] = Complex(u(gen), u(gen));
      }
      CHECK((op.apply(x) - m * x).cwiseAbs().maxCoeff() <= 1e-13);
    }
  }

  TEST_CASE("operator validation") {
    SchwarzBlock block;
    block.a = Complex(0.1, 0);
    block.b = Complex(0.2, 0);
    CHECK_THROWS_AS(BlockToeplitzOperator(block, 1), DomainError);
    const BlockToeplitzOperator op(block, 3);
    CHECK_THROWS_AS(op.apply(ComplexVector::Zero(5)), DomainError);
  }

  TEST_CASE("nilpotency of the forward-only operator") {
    for (int n : {2, 4, 8}) {
      SchwarzBlock block;
      block.a = Complex(0, 0);
      block.b = std::polar(1.0, 0.7);
      CHECK(nilpotency_degree(BlockToeplitzOperator(block, n)) == std::optional<int>(n));
      block.b = Complex(0.9, 0);
      CHECK(nilpotency_degree(BlockToeplitzOperator(block, n)) == std::optional<int>(n));
    }
    SchwarzBlock zero;
    zero.a = Complex(0, 0);
    zero.b = Complex(0, 0);
    CHECK(nilpotency_degree(BlockToeplitzOperator(zero, 3)) == std::optional<int>(1));

    // A generic contraction is not nilpotent.
    SchwarzBlock generic;
    generic.a = Complex(0.3, 0.1);
    generic.b = Complex(0.2, -0.4);
    CHECK(!nilpotency_degree(BlockToeplitzOperator(generic, 4)).has_value());
  }
}
