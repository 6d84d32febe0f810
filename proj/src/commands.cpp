#include "wgschwarz/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>

#include "wgschwarz/csv.hpp"
#include "wgschwarz/svg.hpp"
#include "wgschwarz/version.hpp"

namespace wgs {
namespace {

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Collects produced files so the manifest can list every output; in dry-run
// mode nothing touches the filesystem.
class OutputCollector {
 public:
  OutputCollector(const RunConfig& config, std::ostream& out) : config_(config), out_(out) {}

  void write(const std::string& name, const std::string& content) {
    if (config_.dry_run) {
      out_ << "dry-run: would write " << name << " (" << content.size() << " bytes)\n";
    } else {
      write_text_file((std::filesystem::path(config_.out_dir) / name).string(), content);
      out_ << "wrote " << name << "\n";
    }
    names_.push_back(name);
  }

  const std::vector<std::string>& names() const { return names_; }

 private:
  const RunConfig& config_;
  std::ostream& out_;
  std::vector<std::string> names_;
};

struct CheckReport {
  bool ok = true;
  std::vector<std::string> lines;

  void add(bool pass, const std::string& what) {
    ok = ok && pass;
    lines.push_back(std::string(pass ? "check ok: " : "check FAILED: ") + what);
  }
};

void write_manifest(const std::string& command, const RunConfig& config,
                    const OutputCollector& files) {
  std::ostringstream out;
  out << "command = " << command << "\n";
  out << "version = " << kVersion << "\n";
  out << "timestamp = " << timestamp_utc() << "\n";
  out << "seed = " << config.seed << "\n";
  out << "worst_mode_policy = argmax limiting radius over catalog\n";
  out << "outputs = ";
  for (std::size_t i = 0; i < files.names().size(); ++i) {
    if (i) out << ",";
    out << files.names()[i];
  }
  out << "\n";
  out << "--- resolved config ---\n";
  out << serialize_config(config);
  write_text_file((std::filesystem::path(config.out_dir) / "manifest.txt").string(), out.str());
}

ModeFamily single_family(const RunConfig& config) {
  const std::string name = config.mode_family == "auto" ? "te" : config.mode_family;
  return parse_families({name}).front();
}

int resolve_subdomains(const RunConfig& config, const SweepConfig& sweep) {
  const int n = config.subdomains == 0 ? sweep.n_list.back() : config.subdomains;
  if (n < 2) {
    throw ConfigError("N must be at least 2");
  }
  return n;
}

// Worst catalog mode by default, or the explicit (--family, --r) selection.
WorstMode resolve_mode(const RunConfig& config, const SweepConfig& sweep, Real core_length) {
  if (config.mode_r >= 0 || single_family(config) == ModeFamily::TEM) {
    const Wavenumber k(sweep.k);
    const ModeFamily family = single_family(config);
    const Real r = config.mode_r >= 0 ? config.mode_r : 0.0;
    const Mode mode = make_mode(family, 1, r, k);
    const Complex lambda = transmission_symbol(mode, k, sweep.transmission);
    const SchwarzBlock block = schwarz_block(mode, lambda, core_length, sweep.overlap);
    return WorstMode{mode, lambda, block, limiting_radius(block)};
  }
  return worst_mode(sweep, sweep.k, core_length);
}

std::string describe_mode(const WorstMode& w) {
  std::ostringstream out;
  out << to_string(w.mode.family) << " mode at r=" << w.mode.r
      << " (limiting radius " << w.rho_limit << ")";
  return out.str();
}

void cmd_modes(const RunConfig& config, const SweepConfig& sweep, OutputCollector& files,
               CheckReport& check, std::ostream& out) {
  if (!sweep.section) {
    throw ConfigError("modes needs a cross-section");
  }
  const Wavenumber k(sweep.k);
  std::vector<std::string> warnings;
  const std::vector<Mode> catalog =
      build_mode_catalog(*sweep.section, k, sweep.modes_per_family, sweep.families, &warnings);
  for (const std::string& w : warnings) {
    out << "warning: " << w << "\n";
  }

  CsvWriter csv({"family", "index", "r", "beta_re", "beta_im", "kappa_re", "kappa_im",
                 "classification"});
  for (const Mode& mode : catalog) {
    csv.row({to_string(mode.family), csv_int(mode.index), csv_real(mode.r),
             csv_real(mode.beta.real()), csv_real(mode.beta.imag()),
             csv_real(mode.kappa.real()), csv_real(mode.kappa.imag()),
             to_string(mode.classification)});
  }
  files.write("modes.csv", csv.str());
  out << "catalog: " << catalog.size() << " modes for " << sweep.section->describe() << "\n";

  if (config.check) {
    bool branch_ok = true, square_ok = true, symbol_ok = true, sorted_ok = true;
    std::map<ModeFamily, Real> prev_r;
    for (const Mode& mode : catalog) {
      const Complex target = sweep.k * sweep.k - Complex(mode.r * mode.r);
      square_ok = square_ok && std::abs(mode.beta * mode.beta - target) <=
                                   1e-10 * std::max({std::norm(sweep.k), mode.r * mode.r, 1.0});
      branch_ok = branch_ok && mode.beta.imag() >= -1e-14 * std::abs(mode.beta);
      symbol_ok = symbol_ok && std::abs(mode.kappa - modal_symbol(mode.family, k, mode.beta)) == 0;
      if (prev_r.count(mode.family)) {
        sorted_ok = sorted_ok && mode.r >= prev_r[mode.family] - 1e-12;
      }
      prev_r[mode.family] = mode.r;
    }
    check.add(square_ok, "axial wavenumbers square back to k^2 - r^2");
    check.add(branch_ok, "axial wavenumbers sit on the Im >= 0 branch");
    check.add(symbol_ok, "modal symbols match their family formula");
    check.add(sorted_ok, "per-family spectra are ascending in r");
    const bool has_tem =
        std::find(sweep.families.begin(), sweep.families.end(), ModeFamily::TEM) !=
        sweep.families.end();
    if (has_tem) {
      const auto tem_modes = std::count_if(catalog.begin(), catalog.end(), [](const Mode& m) {
        return m.family == ModeFamily::TEM;
      });
      check.add(tem_modes == std::min(tem_count(*sweep.section), sweep.modes_per_family),
                "TEM mode count equals boundary components - 1");
    }
  }
}

void cmd_limspec(const RunConfig& config, const SweepConfig& sweep, OutputCollector& files,
                 CheckReport& check, std::ostream& out) {
  const std::vector<LimitRow> rows = sweep_limiting_spectrum(sweep);
  CsvWriter csv({"r", "family", "a_re", "a_im", "b_re", "b_im", "rho_limit", "outside_theorem",
                 "skipped"});
  for (const LimitRow& row : rows) {
    csv.row({csv_real(row.r), to_string(row.family), csv_real(row.a.real()),
             csv_real(row.a.imag()), csv_real(row.b.real()), csv_real(row.b.imag()),
             csv_real(row.rho_limit), csv_bool(row.outside_theorem), csv_bool(row.skipped)});
  }
  files.write("limspec.csv", csv.str());
  out << "limiting spectrum: " << rows.size() << " rows\n";

  if (config.svg) {
    std::vector<SvgSeries> series;
    for (ModeFamily family : sweep.families) {
      SvgSeries s;
      s.label = to_string(family);
      for (const LimitRow& row : rows) {
        if (row.family != family) continue;
        s.points.emplace_back(row.r, row.skipped ? std::nan("") : row.rho_limit);
      }
      series.push_back(std::move(s));
    }
    SvgOptions options;
    options.title = "Limiting spectral radius per mode";
    options.xlabel = "transverse wavenumber r";
    options.ylabel = "limiting radius";
    files.write("limspec.svg", render_svg(series, options));
  }

  if (config.check) {
    bool finite_ok = true;
    Real max_rho = 0;
    std::map<Real, Real> te_rho, tm_rho;
    for (const LimitRow& row : rows) {
      if (row.skipped) continue;
      finite_ok = finite_ok && std::isfinite(row.rho_limit);
      max_rho = std::max(max_rho, row.rho_limit);
      if (row.family == ModeFamily::TE) te_rho[row.r] = row.rho_limit;
      if (row.family == ModeFamily::TM) tm_rho[row.r] = row.rho_limit;
    }
    check.add(finite_ok, "non-skipped rows are finite");
    bool pair_ok = true;
    for (const auto& [r, rho] : te_rho) {
      const auto it = tm_rho.find(r);
      if (it != tm_rho.end()) {
        pair_ok = pair_ok && std::abs(rho - it->second) <= 1e-12 * std::max(1.0, rho);
      }
    }
    check.add(pair_ok, "TE and TM limiting radii coincide at matched r");
    if (config.k_im > 0) {
      check.add(max_rho < 1.0 - 1e-3, "damped wavenumber keeps every limiting radius below 1");
    }
  }
}

void cmd_radius(const RunConfig& config, const SweepConfig& sweep, OutputCollector& files,
                CheckReport& check, std::ostream& out) {
  const std::vector<RadiusRow> rows = sweep_finite_n(sweep);
  CsvWriter csv({"r", "family", "N", "rho_N", "rho_limit", "outside_theorem", "skipped"});
  for (const RadiusRow& row : rows) {
    csv.row({csv_real(row.r), to_string(row.family), csv_int(row.subdomains),
             csv_real(row.rho_n), csv_real(row.rho_limit), csv_bool(row.outside_theorem),
             csv_bool(row.skipped)});
  }
  files.write("radius.csv", csv.str());
  out << "finite-N radii: " << rows.size() << " rows\n";

  if (config.svg) {
    for (ModeFamily family : sweep.families) {
      std::vector<SvgSeries> series;
      for (int n : sweep.n_list) {
        SvgSeries s;
        s.label = "N=" + std::to_string(n);
        for (const RadiusRow& row : rows) {
          if (row.family != family || row.subdomains != n) continue;
          s.points.emplace_back(row.r, row.skipped ? std::nan("") : row.rho_n);
        }
        series.push_back(std::move(s));
      }
      SvgSeries limit;
      limit.label = "limit";
      limit.dashed = true;
      for (const RadiusRow& row : rows) {
        if (row.family != family || row.subdomains != sweep.n_list.front()) continue;
        limit.points.emplace_back(row.r, row.skipped ? std::nan("") : row.rho_limit);
      }
      series.push_back(std::move(limit));
      SvgOptions options;
      options.title = std::string("Iteration spectral radius, ") + to_string(family) + " modes";
      options.xlabel = "transverse wavenumber r";
      options.ylabel = "spectral radius";
      files.write(std::string("radius_") + to_string(family) + ".svg",
                  render_svg(series, options));
    }
  }

  if (config.check) {
    const int n_min = *std::min_element(sweep.n_list.begin(), sweep.n_list.end());
    const int n_max = *std::max_element(sweep.n_list.begin(), sweep.n_list.end());
    if (config.k_im == 0) {
      // Evanescent tail: the largest N must sit within 0.05 of the limit and
      // strictly closer than the smallest N.
      struct Gap {
        Real d_min = std::nan("");
        Real d_max = std::nan("");
      };
      std::map<std::pair<int, Real>, Gap> gaps;  // (family, r) -> gaps
      for (const RadiusRow& row : rows) {
        if (row.skipped || row.r < config.k_re + 0.5) continue;
        auto& gap = gaps[{static_cast<int>(row.family), row.r}];
        if (row.subdomains == n_min) gap.d_min = std::abs(row.rho_n - row.rho_limit);
        if (row.subdomains == n_max) gap.d_max = std::abs(row.rho_n - row.rho_limit);
      }
      bool bound_ok = true, closer_ok = true;
      for (const auto& [key, gap] : gaps) {
        if (!std::isfinite(gap.d_min) || !std::isfinite(gap.d_max)) continue;
        bound_ok = bound_ok && gap.d_max <= 0.05;
        if (n_max != n_min) closer_ok = closer_ok && gap.d_max < gap.d_min;
      }
      check.add(bound_ok, "evanescent modes: largest N is within 0.05 of the limiting radius");
      if (n_max != n_min) {
        check.add(closer_ok, "evanescent modes: largest N is closer to the limit than smallest");
      }
    } else {
      bool contraction_ok = true;
      for (const RadiusRow& row : rows) {
        if (!row.skipped) contraction_ok = contraction_ok && row.rho_n < 1.0;
      }
      check.add(contraction_ok, "damped wavenumber keeps every finite-N radius below 1");
    }
  }
}

void cmd_simulate(const RunConfig& config, const SweepConfig& sweep, OutputCollector& files,
                  CheckReport& check, std::ostream& out) {
  const WorstMode target = resolve_mode(config, sweep, sweep.core_length);
  const int n = resolve_subdomains(config, sweep);
  const BlockToeplitzOperator op(target.block, n);
  const ComplexVector initial = config.initial == "random"
                                    ? seeded_gaussian(op.size(), config.seed)
                                    : ComplexVector::Ones(op.size());
  out << "simulate: " << describe_mode(target) << ", N=" << n << ", solver=" << config.solver
      << "\n";

  IterationTrace trace;
  if (config.solver == "gmres") {
    const auto apply = [&op](const ComplexVector& x) -> ComplexVector {
      return x - op.apply(x);
    };
    trace = gmres_solve(apply, initial, config.tol, 0, config.max_iters).trace;
  } else if (config.solver == "fixedpoint") {
    trace = fixed_point_run(op, initial, config.tol, config.max_iters);
    const Real scale = initial.lpNorm<Eigen::Infinity>();
    for (Real& r : trace.residuals) {
      r /= scale;
    }
  } else {
    throw ConfigError("unknown solver '" + config.solver + "'; expected gmres or fixedpoint");
  }

  CsvWriter csv({"iter", "residual"});
  for (std::size_t i = 0; i < trace.residuals.size(); ++i) {
    csv.row({csv_int(static_cast<long long>(i) + 1), csv_real(trace.residuals[i])});
  }
  files.write("simulate.csv", csv.str());
  out << (trace.converged ? "converged" : "did not converge") << " after " << trace.iterations
      << " iterations\n";

  if (config.svg) {
    SvgSeries s;
    s.label = config.solver;
    for (std::size_t i = 0; i < trace.residuals.size(); ++i) {
      s.points.emplace_back(static_cast<Real>(i + 1), trace.residuals[i]);
    }
    SvgOptions options;
    options.title = "Relative residual history";
    options.xlabel = "iteration";
    options.ylabel = "relative residual";
    options.ylog = true;
    files.write("simulate.svg", render_svg({s}, options));
  }

  if (config.check) {
    if (sweep.transmission.kind() == TransmissionSpec::Kind::Dtn) {
      check.add(trace.converged && trace.iterations <= n,
                "exact transparent condition converges within N iterations");
    }
    if (target.rho_limit < 1.0 && config.solver == "gmres") {
      check.add(trace.converged, "contractive mode converges within the iteration cap");
    }
  }
}

void cmd_table(const RunConfig& config, const SweepConfig& sweep, OutputCollector& files,
               CheckReport& check, std::ostream& out) {
  const std::vector<TableRow> rows = scalability_table(sweep);
  std::vector<std::string> header{"sigma", "k_re", "k_im"};
  for (int n : sweep.n_list) {
    header.push_back("N" + std::to_string(n));
  }
  CsvWriter csv(header);
  const std::size_t per_row = sweep.n_list.size();
  for (std::size_t i = 0; i < rows.size(); i += per_row) {
    const std::size_t sigma_index = i / per_row;
    std::vector<std::string> cells{config.sigma_list[sigma_index],
                                   csv_real(rows[i].k_eff.real()),
                                   csv_real(rows[i].k_eff.imag())};
    for (std::size_t j = 0; j < per_row; ++j) {
      const TableRow& row = rows[i + j];
      cells.push_back(row.converged ? csv_int(row.iterations) : "DNC");
    }
    csv.row(cells);
  }
  files.write("table.csv", csv.str());
  out << "scalability table: " << config.sigma_list.size() << " damping rows x "
      << sweep.n_list.size() << " subdomain counts (" << config.table_mode << " mode)\n";

  if (config.check) {
    for (std::size_t i = 0; i < rows.size(); i += per_row) {
      const Real shift = rows[i].damping;
      std::vector<int> iters;
      bool all_converged = true;
      for (std::size_t j = 0; j < per_row; ++j) {
        iters.push_back(rows[i + j].iterations);
        all_converged = all_converged && rows[i + j].converged;
      }
      std::ostringstream label;
      label << "sigma=" << config.sigma_list[i / per_row];
      if (std::abs(shift - config.k_re) <= 1e-12 * std::max(1.0, config.k_re)) {
        const auto [lo, hi] = std::minmax_element(iters.begin(), iters.end());
        check.add(all_converged && *hi - *lo <= 2,
                  label.str() + ": iteration count is flat across N (spread <= 2)");
      } else if (shift == 0 && config.k_im == 0) {
        bool increasing = all_converged;
        for (std::size_t j = 1; j < iters.size(); ++j) {
          increasing = increasing && iters[j] > iters[j - 1];
        }
        check.add(increasing, label.str() + ": iteration count grows strictly with N");
      }
    }
  }
}

void cmd_dictionary(const RunConfig& config, const SweepConfig& sweep, OutputCollector& files,
                    CheckReport& check, std::ostream& out) {
  const std::vector<DictionaryRow> rows = dictionary_sweep(sweep);
  CsvWriter csv({"r", "beta_re", "beta_im", "a_residual", "b_residual", "rho_limit_diff",
                 "skipped"});
  for (const DictionaryRow& row : rows) {
    csv.row({csv_real(row.r), csv_real(row.beta.real()), csv_real(row.beta.imag()),
             csv_real(row.a_residual), csv_real(row.b_residual),
             csv_real(row.radius_difference), csv_bool(row.skipped)});
  }
  files.write("dictionary.csv", csv.str());
  out << "dictionary residuals: " << rows.size() << " rows\n";

  if (config.check) {
    bool res_ok = true, radius_ok = true;
    for (const DictionaryRow& row : rows) {
      if (row.skipped) continue;
      res_ok = res_ok && row.a_residual < 1e-12 && row.b_residual < 1e-12;
      radius_ok = radius_ok && row.radius_difference <= 1e-13;
    }
    check.add(res_ok, "TE/TM coupling residuals stay below 1e-12");
    check.add(radius_ok, "TE/TM limiting radii agree to 1e-13");
  }
}

void cmd_nilpotency(const RunConfig& config, const SweepConfig& sweep, OutputCollector& files,
                    CheckReport& check, std::ostream& out) {
  const WorstMode target = resolve_mode(config, sweep, sweep.core_length);
  const int n = resolve_subdomains(config, sweep);
  const BlockToeplitzOperator op(target.block, n);
  const std::optional<int> degree = nilpotency_degree(op);

  CsvWriter csv({"family", "r", "N", "nilpotent", "degree"});
  csv.row({to_string(target.mode.family), csv_real(target.mode.r), csv_int(n),
           csv_bool(degree.has_value()), csv_int(degree.value_or(-1))});
  files.write("nilpotency.csv", csv.str());

  out << "nilpotency: " << describe_mode(target) << ", N=" << n << ": ";
  if (degree) {
    out << "nilpotent of degree " << *degree << "\n";
  } else {
    out << "not nilpotent within 2N powers\n";
  }

  if (config.check) {
    if (sweep.transmission.kind() == TransmissionSpec::Kind::Dtn) {
      check.add(degree.has_value() && *degree <= n,
                "exact transparent condition is nilpotent of degree <= N");
    } else {
      check.add(true, "no nilpotency requirement for this transmission condition");
    }
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"modes",      "limspec", "radius",    "simulate",
                                              "table",      "dictionary", "nilpotency"};
  return names;
}

int run_command(const std::string& command, const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  try {
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
      std::string all;
      for (const std::string& name : names) {
        if (!all.empty()) all += ", ";
        all += name;
      }
      throw ConfigError("unknown command '" + command + "'; expected one of: " + all);
    }
    const SweepConfig sweep = make_sweep_config(config);
    if (!config.dry_run) {
      std::error_code ec;
      std::filesystem::create_directories(config.out_dir, ec);
      if (ec) {
        throw Error("cannot create output directory " + config.out_dir + ": " + ec.message());
      }
    }
    OutputCollector files(config, out);
    CheckReport check;
    if (command == "modes") {
      cmd_modes(config, sweep, files, check, out);
    } else if (command == "limspec") {
      cmd_limspec(config, sweep, files, check, out);
    } else if (command == "radius") {
      cmd_radius(config, sweep, files, check, out);
    } else if (command == "simulate") {
      cmd_simulate(config, sweep, files, check, out);
    } else if (command == "table") {
      cmd_table(config, sweep, files, check, out);
    } else if (command == "dictionary") {
      cmd_dictionary(config, sweep, files, check, out);
    } else if (command == "nilpotency") {
      cmd_nilpotency(config, sweep, files, check, out);
    }
    if (!config.dry_run) {
      write_manifest(command, config, files);
    }
    if (config.check) {
      for (const std::string& line : check.lines) {
        out << line << "\n";
      }
      if (!check.ok) {
        err << "one or more checks failed\n";
        return 4;
      }
    }
    return 0;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace wgs
