#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wgschwarz/cross_section.hpp"
#include "wgschwarz/schwarz.hpp"
#include "wgschwarz/spectral.hpp"
#include "wgschwarz/transmission.hpp"
#include "wgschwarz/types.hpp"

namespace wgs {

// Numeric sweep parameters shared by the orchestration entry points. The
// r grid drives TE/TM rows; a TEM family contributes a single row at r = 0.
struct SweepConfig {
  Complex k{10, 0};
  Real core_length = 1;
  Real overlap = 0.1;
  TransmissionSpec transmission = TransmissionSpec::impedance();
  std::vector<ModeFamily> families{ModeFamily::TE, ModeFamily::TM};
  Real r_min = 0;
  Real r_max = 20;
  Real r_step = 0.05;
  std::vector<int> n_list{5, 10, 15, 20, 25, 30, 35};
  std::vector<Real> damping_shifts;  // additive Im k values for the tables
  std::optional<CrossSection> section;
  int modes_per_family = 8;
  enum class TableMode { Weak, Strong } table_mode = TableMode::Weak;
  Real total_length = 40;  // strong mode: N (L + 2 delta) - overlap corrections
  Index dense_cap = 2000;
  std::uint64_t seed = 0;
  enum class Initial { ModalUnit, Random } initial = Initial::ModalUnit;
  Real gmres_tol = 1e-5;
  int gmres_max_iters = 2000;
};

std::vector<Real> r_grid(const SweepConfig& config);

// One r-grid point of the limiting spectrum. Points where the mode cannot be
// built (cut-off, layer resonance, singular denominator) are kept as skipped
// rows so curves stay aligned with the grid.
struct LimitRow {
  Real r = 0;
  ModeFamily family = ModeFamily::TE;
  Complex a;
  Complex b;
  Real rho_limit = 0;
  bool outside_theorem = false;
  bool skipped = false;
  std::string note;
};

std::vector<LimitRow> sweep_limiting_spectrum(const SweepConfig& config);

struct RadiusRow {
  Real r = 0;
  ModeFamily family = ModeFamily::TE;
  int subdomains = 0;
  Real rho_n = 0;
  Real rho_limit = 0;
  bool outside_theorem = false;
  bool skipped = false;
  std::string note;
};

std::vector<RadiusRow> sweep_finite_n(const SweepConfig& config);

// Worst mode of the catalog under the given effective wavenumber and core
// length: the argmax of the limiting radius (skipped modes excluded).
struct WorstMode {
  Mode mode;
  Complex lambda;
  SchwarzBlock block;
  Real rho_limit = 0;
};

WorstMode worst_mode(const SweepConfig& config, Complex k_eff, Real core_length);

struct TableRow {
  Real damping = 0;  // effective shift added to Im k
  Complex k_eff;
  int subdomains = 0;
  int iterations = 0;
  bool converged = false;
  ModeFamily worst_family = ModeFamily::TE;
  Real worst_r = 0;
  Real worst_rho = 0;
};

// GMRES iteration counts on the worst mode per damping shift and subdomain
// count; strong mode shrinks the core length so the total guide length stays
// fixed at `total_length`.
std::vector<TableRow> scalability_table(const SweepConfig& config);

struct DictionaryRow {
  Real r = 0;
  Complex beta;
  Real a_residual = 0;
  Real b_residual = 0;
  Real radius_difference = 0;
  bool skipped = false;
  std::string note;
};

std::vector<DictionaryRow> dictionary_sweep(const SweepConfig& config);

}  // namespace wgs
