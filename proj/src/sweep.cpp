#include "wgschwarz/sweep.hpp"

#include <algorithm>
#include <cmath>

namespace wgs {
namespace {

struct BlockOrSkip {
  std::optional<SchwarzBlock> block;
  std::string note;
};

// Builds the per-mode block, translating per-point failures into skip notes;
// anything else propagates.
BlockOrSkip try_block(const SweepConfig& config, ModeFamily family, Real r, Complex k_eff,
                      Real core_length) {
  BlockOrSkip out;
  try {
    const Wavenumber k(k_eff);
    const Mode mode = make_mode(family, 1, r, k);
    const Complex lambda = transmission_symbol(mode, k, config.transmission);
    out.block = schwarz_block(mode, lambda, core_length, config.overlap);
  } catch (const CutoffError& e) {
    out.note = e.what();
  } catch (const PmlResonanceError& e) {
    out.note = e.what();
  } catch (const SingularDenominatorError& e) {
    out.note = e.what();
  }
  return out;
}

Real strong_core_length(const SweepConfig& config, int subdomains) {
  const Real core = config.total_length / subdomains - 2 * config.overlap;
  if (!(core > 0)) {
    throw DomainError("strong scaling: total length " + std::to_string(config.total_length) +
                      " leaves no core for N=" + std::to_string(subdomains));
  }
  return core;
}

}  // namespace

std::vector<Real> r_grid(const SweepConfig& config) {
  if (!(config.r_step > 0)) {
    throw DomainError("r grid step must be positive");
  }
  if (config.r_max < config.r_min) {
    throw DomainError("r grid has r_max < r_min");
  }
  std::vector<Real> grid;
  const Real span = config.r_max - config.r_min;
  const auto steps = static_cast<long>(std::floor(span / config.r_step + 1e-9));
  for (long i = 0; i <= steps; ++i) {
    grid.push_back(config.r_min + static_cast<Real>(i) * config.r_step);
  }
  return grid;
}

std::vector<LimitRow> sweep_limiting_spectrum(const SweepConfig& config) {
  std::vector<LimitRow> rows;
  const std::vector<Real> grid = r_grid(config);
  const Real nan = std::nan("");
  for (ModeFamily family : config.families) {
    const std::vector<Real> points =
        family == ModeFamily::TEM ? std::vector<Real>{0.0} : grid;
    for (Real r : points) {
      LimitRow row;
      row.r = r;
      row.family = family;
      BlockOrSkip result = try_block(config, family, r, config.k, config.core_length);
      if (!result.block) {
        row.skipped = true;
        row.note = result.note;
        row.a = row.b = Complex(nan, nan);
        row.rho_limit = nan;
      } else {
        row.a = result.block->a;
        row.b = result.block->b;
        row.rho_limit = limiting_radius(*result.block);
        row.outside_theorem = outside_limit_theorem(*result.block);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<RadiusRow> sweep_finite_n(const SweepConfig& config) {
  std::vector<RadiusRow> rows;
  const std::vector<Real> grid = r_grid(config);
  const Real nan = std::nan("");
  for (ModeFamily family : config.families) {
    const std::vector<Real> points =
        family == ModeFamily::TEM ? std::vector<Real>{0.0} : grid;
    for (Real r : points) {
      BlockOrSkip result = try_block(config, family, r, config.k, config.core_length);
      for (int n : config.n_list) {
        RadiusRow row;
        row.r = r;
        row.family = family;
        row.subdomains = n;
        if (!result.block) {
          row.skipped = true;
          row.note = result.note;
          row.rho_n = nan;
          row.rho_limit = nan;
        } else {
          row.rho_n = spectral_radius(BlockToeplitzOperator(*result.block, n), config.dense_cap);
          row.rho_limit = limiting_radius(*result.block);
          row.outside_theorem = outside_limit_theorem(*result.block);
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

WorstMode worst_mode(const SweepConfig& config, Complex k_eff, Real core_length) {
  if (!config.section) {
    throw DomainError("worst-mode selection needs a cross-section");
  }
  const Wavenumber k(k_eff);
  const std::vector<Mode> catalog =
      build_mode_catalog(*config.section, k, config.modes_per_family, config.families);
  std::optional<WorstMode> worst;
  for (const Mode& mode : catalog) {
    try {
      const Complex lambda = transmission_symbol(mode, k, config.transmission);
      const SchwarzBlock block = schwarz_block(mode, lambda, core_length, config.overlap);
      const Real rho = limiting_radius(block);
      if (!worst || rho > worst->rho_limit) {
        worst = WorstMode{mode, lambda, block, rho};
      }
    } catch (const PmlResonanceError&) {
      continue;
    } catch (const SingularDenominatorError&) {
      continue;
    }
  }
  if (!worst) {
    throw NumericError("no usable mode in the catalog for worst-mode selection");
  }
  return *worst;
}

std::vector<TableRow> scalability_table(const SweepConfig& config) {
  std::vector<TableRow> rows;
  const std::vector<Real> shifts =
      config.damping_shifts.empty() ? std::vector<Real>{0.0} : config.damping_shifts;
  for (Real shift : shifts) {
    if (shift < 0) {
      throw DomainError("damping shifts must be nonnegative");
    }
    const Complex k_eff = config.k + Complex(0, shift);
    std::optional<WorstMode> weak_worst;
    if (config.table_mode == SweepConfig::TableMode::Weak) {
      weak_worst = worst_mode(config, k_eff, config.core_length);
    }
    for (int n : config.n_list) {
      const Real core = config.table_mode == SweepConfig::TableMode::Weak
                            ? config.core_length
                            : strong_core_length(config, n);
      const WorstMode worst =
          weak_worst ? *weak_worst : worst_mode(config, k_eff, core);
      const BlockToeplitzOperator op(worst.block, n);
      const ComplexVector rhs = config.initial == SweepConfig::Initial::ModalUnit
                                    ? ComplexVector::Ones(op.size())
                                    : seeded_gaussian(op.size(), config.seed);
      const auto apply = [&op](const ComplexVector& x) -> ComplexVector {
        return x - op.apply(x);
      };
      const GmresResult solve =
          gmres_solve(apply, rhs, config.gmres_tol, 0, config.gmres_max_iters);
      TableRow row;
      row.damping = shift;
      row.k_eff = k_eff;
      row.subdomains = n;
      row.iterations = solve.trace.iterations;
      row.converged = solve.trace.converged;
      row.worst_family = worst.mode.family;
      row.worst_r = worst.mode.r;
      row.worst_rho = worst.rho_limit;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<DictionaryRow> dictionary_sweep(const SweepConfig& config) {
  std::vector<DictionaryRow> rows;
  for (Real r : r_grid(config)) {
    DictionaryRow row;
    row.r = r;
    BlockOrSkip te = try_block(config, ModeFamily::TE, r, config.k, config.core_length);
    BlockOrSkip tm = try_block(config, ModeFamily::TM, r, config.k, config.core_length);
    if (!te.block || !tm.block) {
      row.skipped = true;
      row.note = te.block ? tm.note : te.note;
      const Real nan = std::nan("");
      row.beta = Complex(nan, nan);
      row.a_residual = row.b_residual = row.radius_difference = nan;
    } else {
      row.beta = te.block->mode.beta;
      const DictionaryReport report =
          dictionary_check(*te.block, *tm.block, config.transmission);
      row.a_residual = report.a_residual;
      row.b_residual = report.b_residual;
      row.radius_difference = report.radius_difference;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wgs
