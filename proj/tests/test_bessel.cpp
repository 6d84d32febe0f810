#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wgschwarz/bessel.hpp"
#include "wgschwarz/types.hpp"

using namespace wgs;

TEST_SUITE("bessel") {
  TEST_CASE("values match the power series oracle") {
    for (int m : {0, 1, 2, 3, 5}) {
      for (double x : {0.1, 0.5, 1.0, 2.4048255577, 5.0, 10.0, 17.3, 25.0}) {
        CAPTURE(m);
        CAPTURE(x);
        CHECK(std::abs(bessel::j(m, x) - oracle::bessel_j(m, x)) <= 1e-12);
      }
    }
  }

  TEST_CASE("derivative identities") {
    for (double x : {0.3, 1.7, 4.2, 9.9}) {
      CHECK(bessel::j_prime(0, x) == -bessel::j(1, x));
      for (int m : {1, 2, 4}) {
        const double h = 1e-6;
        const double fd =
            (oracle::bessel_j(m, x + h) - oracle::bessel_j(m, x - h)) / (2 * h);
        CHECK(std::abs(bessel::j_prime(m, x) - fd) <= 1e-8);
      }
    }
  }

  TEST_CASE("zeros of J0 match literature values and kill the oracle series") {
    const auto zeros = bessel::j_zeros(0, 30.0);
    REQUIRE(zeros.size() >= 4);
    const double lit[] = {2.404825557695773, 5.520078110286311, 8.653727912911013,
                          11.791534439014281};
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(zeros[static_cast<std::size_t>(i)] - lit[i]) <= 1e-9);
    }
    for (double z : zeros) {
      CHECK(z > 0);
      CHECK(z <= 30.0);
      CHECK(std::abs(oracle::bessel_j(0, z)) <= 1e-11);
    }
  }

  TEST_CASE("zeros agree with independent bisection refinement") {
    const auto zeros = bessel::j_zeros(1, 20.0);
    REQUIRE(!zeros.empty());
    for (double z : zeros) {
      const double ref = oracle::bisect([](double x) { return oracle::bessel_j(1, x); },
                                        z - 0.01, z + 0.01);
      CHECK(std::abs(z - ref) <= 1e-10);
    }
  }

  TEST_CASE("derivative zeros: j'_{1,1} and series residual") {
    const auto zeros = bessel::j_prime_zeros(1, 20.0);
    REQUIRE(zeros.size() >= 3);
    CHECK(std::abs(zeros[0] - 1.8411837813) <= 1e-9);
    CHECK(std::abs(zeros[1] - 5.331442773525033) <= 1e-9);
    for (double z : zeros) {
      const double h = 1e-6;
      const double fd =
          (oracle::bessel_j(1, z + h) - oracle::bessel_j(1, z - h)) / (2 * h);
      CHECK(std::abs(fd) <= 1e-6);
    }
  }

  TEST_CASE("trivial zero of J0' at the origin is excluded") {
    const auto zeros = bessel::j_prime_zeros(0, 15.0);
    REQUIRE(!zeros.empty());
    CHECK(zeros[0] > 1.0);  // first true extremum of J0 is near 3.83
    CHECK(std::abs(zeros[0] - 3.831705970207512) <= 1e-9);
  }

  TEST_CASE("zeros are strictly increasing with asymptotic spacing pi") {
    const auto zeros = bessel::j_zeros(0, 40.0);
    REQUIRE(zeros.size() >= 8);
    for (std::size_t i = 1; i < zeros.size(); ++i) {
      const double gap = zeros[i] - zeros[i - 1];
      CHECK(gap > 3.1);
      CHECK(gap < 3.2);
    }
  }

  TEST_CASE("zeros of J0 and J1 interlace") {
    const auto z0 = bessel::j_zeros(0, 25.0);
    const auto z1 = bessel::j_zeros(1, 25.0);
    for (std::size_t i = 0; i + 1 < z0.size() && i < z1.size(); ++i) {
      CHECK(z0[i] < z1[i]);
      CHECK(z1[i] < z0[i + 1]);
    }
  }
}
