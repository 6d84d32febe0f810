#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "wgschwarz/sweep.hpp"
#include "wgschwarz/types.hpp"

using namespace wgs;

TEST_SUITE("sweep") {
  TEST_CASE("r grid includes both ends and honours the step") {
    SweepConfig config;
    config.r_min = 0;
    config.r_max = 20;
    config.r_step = 0.05;
    const auto grid = r_grid(config);
    CHECK(grid.size() == 401);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == doctest::Approx(20.0).epsilon(1e-12));

    config.r_max = 1.0;
    config.r_step = 0.3;
    const auto coarse = r_grid(config);
    REQUIRE(coarse.size() == 4);
    CHECK(coarse[3] == doctest::Approx(0.9).epsilon(1e-12));
  }

  TEST_CASE("limiting sweep keeps skipped rows aligned with the grid") {
    SweepConfig config;
    config.r_min = 9.0;
    config.r_max = 11.0;
    config.r_step = 0.5;  // hits the cut-off r = 10 exactly
    config.families = {ModeFamily::TE};
    const auto rows = sweep_limiting_spectrum(config);
    REQUIRE(rows.size() == 5);
    int skipped = 0;
    for (const auto& row : rows) {
      if (row.skipped) {
        ++skipped;
        CHECK(row.r == 10.0);
        CHECK(!row.note.empty());
        CHECK(std::isnan(row.rho_limit));
      } else {
        CHECK(std::isfinite(row.rho_limit));
      }
    }
    CHECK(skipped == 1);
  }

  TEST_CASE("TEM family contributes a single row at r = 0") {
    SweepConfig config;
    config.families = {ModeFamily::TEM};
    const auto rows = sweep_limiting_spectrum(config);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].r == 0.0);
    CHECK(rows[0].family == ModeFamily::TEM);
    CHECK(!rows[0].skipped);
    // Impedance at beta = k: lambda = -kappa, the exact transparent value.
    CHECK(rows[0].a == Complex(0, 0));
    CHECK(rows[0].outside_theorem);
  }

  TEST_CASE("finite-N sweep emits one row per (family, r, N), N innermost") {
    SweepConfig config;
    config.r_min = 11.0;
    config.r_max = 12.0;
    config.r_step = 0.5;
    config.n_list = {2, 4};
    const auto rows = sweep_finite_n(config);
    REQUIRE(rows.size() == 2 * 3 * 2);
    CHECK(rows[0].subdomains == 2);
    CHECK(rows[1].subdomains == 4);
    CHECK(rows[0].r == rows[1].r);
    // Finite radii are bounded by a modest multiple of the limit.
    for (const auto& row : rows) {
      if (!row.skipped) {
        CHECK(row.rho_n <= 2.0 * row.rho_limit + 1e-12);
      }
    }
  }

  TEST_CASE("evanescent finite-N radii approach the limit from below capacity") {
    SweepConfig config;
    config.r_min = 12.0;
    config.r_max = 12.0;
    config.r_step = 1.0;
    config.families = {ModeFamily::TE};
    config.n_list = {5, 35};
    const auto rows = sweep_finite_n(config);
    REQUIRE(rows.size() == 2);
    const Real d5 = std::abs(rows[0].rho_n - rows[0].rho_limit);
    const Real d35 = std::abs(rows[1].rho_n - rows[1].rho_limit);
    CHECK(d35 <= 0.05);
    CHECK(d35 < d5);
  }

  TEST_CASE("worst mode maximizes the limiting radius over the catalog") {
    SweepConfig config;
    config.section = CrossSection::rectangle(1, 1);
    const WorstMode worst = worst_mode(config, config.k, config.core_length);
    // k = 10 on the unit square: the nearest-to-cutoff propagative mode at
    // r = 2 sqrt(2) pi dominates.
    CHECK(worst.mode.r == doctest::Approx(2 * std::sqrt(2.0) * std::acos(-1.0)).epsilon(1e-12));
    CHECK(worst.rho_limit > 1.0);

    // Every other catalog mode has a smaller or equal limiting radius.
    const Wavenumber k(config.k);
    for (const Mode& mode : build_mode_catalog(*config.section, k, config.modes_per_family,
                                               config.families)) {
      const Complex lambda = transmission_symbol(mode, k, config.transmission);
      const SchwarzBlock block = schwarz_block(mode, lambda, config.core_length, config.overlap);
      CHECK(limiting_radius(block) <= worst.rho_limit + 1e-12);
    }
  }

  TEST_CASE("worst mode requires a cross-section") {
    SweepConfig config;
    CHECK_THROWS_AS(worst_mode(config, config.k, config.core_length), DomainError);
  }

  TEST_CASE("weak scalability iteration counts: undamped grows, damped flat") {
    SweepConfig config;
    config.section = CrossSection::rectangle(1, 1);
    config.n_list = {5, 10, 15, 20};
    config.damping_shifts = {0.0, 10.0};
    const auto rows = scalability_table(config);
    REQUIRE(rows.size() == 8);
    // Undamped propagative worst mode: GMRES needs exactly N iterations.
    for (int i = 0; i < 4; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      CHECK(row.damping == 0.0);
      CHECK(row.converged);
      CHECK(row.iterations == config.n_list[static_cast<std::size_t>(i)]);
    }
    // Damping at the level of Re k: flat, tiny counts.
    int lo = 1 << 30, hi = 0;
    for (int i = 4; i < 8; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      CHECK(row.damping == 10.0);
      CHECK(row.converged);
      lo = std::min(lo, row.iterations);
      hi = std::max(hi, row.iterations);
    }
    CHECK(hi - lo <= 2);
  }

  TEST_CASE("strong scaling shrinks cores and validates the budget") {
    SweepConfig config;
    config.section = CrossSection::rectangle(1, 1);
    config.n_list = {5, 10};
    config.damping_shifts = {1.0};
    config.table_mode = SweepConfig::TableMode::Strong;
    config.total_length = 40;
    CHECK_NOTHROW(scalability_table(config));

    config.total_length = 1.0;  // 1/5 - 0.2 = 0: no room for a core
    CHECK_THROWS_AS(scalability_table(config), DomainError);
  }

  TEST_CASE("negative damping shifts are rejected") {
    SweepConfig config;
    config.section = CrossSection::rectangle(1, 1);
    config.damping_shifts = {-0.5};
    CHECK_THROWS_AS(scalability_table(config), DomainError);
  }

  TEST_CASE("dictionary sweep residuals vanish on a coarse grid") {
    SweepConfig config;
    config.r_min = 0;
    config.r_max = 20;
    config.r_step = 0.5;
    const auto rows = dictionary_sweep(config);
    REQUIRE(rows.size() == 41);
    int usable = 0;
    for (const auto& row : rows) {
      if (row.skipped) continue;
      ++usable;
      CHECK(row.a_residual < 1e-12);
      CHECK(row.b_residual < 1e-12);
      CHECK(row.radius_difference <= 1e-13);
    }
    CHECK(usable >= 39);  // only the cut-off point r = 10 may drop out
  }
}
