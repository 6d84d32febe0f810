// Command line front end. Precedence: built-in defaults, then --config file,
// then explicit flags.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wgschwarz/commands.hpp"
#include "wgschwarz/config.hpp"
#include "wgschwarz/version.hpp"

namespace {

struct FlagBag {
  std::optional<std::string> config_path;
  std::optional<double> k_re, k_im, core_length, overlap;
  std::optional<std::string> n_list;
  std::optional<std::string> transmission;
  std::optional<double> pml_sigma, pml_len;
  std::optional<std::string> families;
  std::optional<double> r_min, r_max, r_step;
  std::optional<std::string> sigma_list, table_mode;
  std::optional<double> total_length;
  std::optional<int> max_modes, subdomains, max_iters;
  std::optional<double> mode_r, tol;
  std::optional<std::string> mode_family, solver, initial, section, out_dir;
  std::optional<unsigned long long> seed;
  bool svg = false, check = false, dry_run = false;
};

void add_common_flags(CLI::App* cmd, FlagBag& bag) {
  cmd->add_option("--config", bag.config_path, "configuration file (key = value lines)");
  cmd->add_option("--k", bag.k_re, "wavenumber, real part");
  cmd->add_option("--k-im", bag.k_im, "wavenumber, imaginary part (damping)");
  cmd->add_option("--L", bag.core_length, "non-overlapping subdomain length");
  cmd->add_option("--delta", bag.overlap, "overlap half-width");
  cmd->add_option("--N-list", bag.n_list, "subdomain counts, comma separated");
  cmd->add_option("--transmission", bag.transmission, "impedance, pml, or dtn");
  cmd->add_option("--pml-sigma", bag.pml_sigma, "absorption strength of the pml condition");
  cmd->add_option("--pml-len", bag.pml_len, "layer length of the pml condition");
  cmd->add_option("--families", bag.families, "mode families, comma separated (te,tm,tem)");
  cmd->add_option("--r-min", bag.r_min, "sweep start for the transverse wavenumber");
  cmd->add_option("--r-max", bag.r_max, "sweep end for the transverse wavenumber");
  cmd->add_option("--r-step", bag.r_step, "sweep step for the transverse wavenumber");
  cmd->add_option("--sigma-list", bag.sigma_list,
                  "damping shifts for the table (tokens: 0,1,k,inv_k or numbers)");
  cmd->add_option("--mode", bag.table_mode, "table scaling mode: weak or strong");
  cmd->add_option("--total-length", bag.total_length, "fixed domain length for strong scaling");
  cmd->add_option("--max-modes", bag.max_modes, "catalog size per mode family");
  cmd->add_option("--N", bag.subdomains, "subdomain count for single-run commands");
  cmd->add_option("--r", bag.mode_r, "transverse wavenumber of the selected mode");
  cmd->add_option("--family", bag.mode_family, "family of the selected mode (te, tm, tem)");
  cmd->add_option("--solver", bag.solver, "simulate solver: gmres or fixedpoint");
  cmd->add_option("--initial", bag.initial, "initial data: modal or random");
  cmd->add_option("--tol", bag.tol, "relative residual tolerance");
  cmd->add_option("--max-iters", bag.max_iters, "iteration cap");
  cmd->add_option("--section", bag.section, "cross-section: rect:W,H disk:R annulus:RI,RO mask:PATH");
  cmd->add_option("--out", bag.out_dir, "output directory");
  cmd->add_option("--seed", bag.seed, "seed for random initial data");
  cmd->add_flag("--svg", bag.svg, "also render svg plots");
  cmd->add_flag("--check", bag.check, "run result checks; exit 4 on failure");
  cmd->add_flag("--dry-run", bag.dry_run, "validate configuration without writing outputs");
}

wgs::RunConfig resolve_config(const FlagBag& bag) {
  wgs::RunConfig config =
      bag.config_path ? wgs::parse_config_file(*bag.config_path) : wgs::default_config();
  if (bag.k_re) config.k_re = *bag.k_re;
  if (bag.k_im) config.k_im = *bag.k_im;
  if (bag.core_length) config.core_length = *bag.core_length;
  if (bag.overlap) config.overlap = *bag.overlap;
  if (bag.n_list) config.n_list = wgs::parse_int_list(*bag.n_list, "--N-list");
  if (bag.transmission) config.transmission = *bag.transmission;
  if (bag.pml_sigma) config.pml_sigma = *bag.pml_sigma;
  if (bag.pml_len) config.pml_len = *bag.pml_len;
  if (bag.families) config.families = wgs::split_list(*bag.families);
  if (bag.r_min) config.r_min = *bag.r_min;
  if (bag.r_max) config.r_max = *bag.r_max;
  if (bag.r_step) config.r_step = *bag.r_step;
  if (bag.sigma_list) config.sigma_list = wgs::split_list(*bag.sigma_list);
  if (bag.table_mode) config.table_mode = *bag.table_mode;
  if (bag.total_length) config.total_length = *bag.total_length;
  if (bag.max_modes) config.max_modes = *bag.max_modes;
  if (bag.subdomains) config.subdomains = *bag.subdomains;
  if (bag.mode_r) config.mode_r = *bag.mode_r;
  if (bag.mode_family) config.mode_family = *bag.mode_family;
  if (bag.solver) config.solver = *bag.solver;
  if (bag.initial) config.initial = *bag.initial;
  if (bag.tol) config.tol = *bag.tol;
  if (bag.max_iters) config.max_iters = *bag.max_iters;
  if (bag.section) config.section = *bag.section;
  if (bag.out_dir) config.out_dir = *bag.out_dir;
  if (bag.seed) config.seed = *bag.seed;
  if (bag.svg) config.svg = true;
  if (bag.check) config.check = true;
  if (bag.dry_run) config.dry_run = true;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Per-mode convergence analysis of one-level Schwarz methods for waveguides"};
  app.set_version_flag("--version", wgs::kVersion);
  app.require_subcommand(1);

  FlagBag bag;
  const struct {
    const char* name;
    const char* help;
  } commands[] = {
      {"modes", "tabulate the mode catalog of a cross-section"},
      {"limspec", "sweep the limiting spectrum over transverse wavenumbers"},
      {"radius", "sweep finite-N iteration spectral radii"},
      {"simulate", "run the iteration on one mode and record residuals"},
      {"table", "weak/strong scalability table of iteration counts"},
      {"dictionary", "verify the TE/TM coupling dictionary numerically"},
      {"nilpotency", "probe nilpotency of the iteration operator"},
  };
  for (const auto& c : commands) {
    add_common_flags(app.add_subcommand(c.name, c.help), bag);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const wgs::RunConfig config = resolve_config(bag);
    return wgs::run_command(app.get_subcommands().front()->get_name(), config, std::cout,
                            std::cerr);
  } catch (const wgs::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const wgs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
