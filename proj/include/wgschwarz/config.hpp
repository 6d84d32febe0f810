#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wgschwarz/cross_section.hpp"
#include "wgschwarz/sweep.hpp"
#include "wgschwarz/types.hpp"

namespace wgs {

// Resolved run configuration. String-valued fields stay close to the file
// format; `make_sweep_config` converts and validates them. Sentinels: N = 0
// and mode_r < 0 mean "auto" (largest N in the list / worst catalog mode).
struct RunConfig {
  // problem
  Real k_re = 10;
  Real k_im = 0;
  // geometry
  Real core_length = 1;
  Real overlap = 0.1;
  std::vector<int> n_list{5, 10, 15, 20, 25, 30, 35};
  // transmission
  std::string transmission = "impedance";
  Real pml_sigma = 1;
  Real pml_len = 1;
  // sweep
  std::vector<std::string> families{"te", "tm"};
  Real r_min = 0;
  Real r_max = 20;
  Real r_step = 0.05;
  std::vector<std::string> sigma_list{"0", "inv_k", "1", "k"};
  std::string table_mode = "weak";
  Real total_length = 40;
  int max_modes = 8;
  // run
  int subdomains = 0;
  Real mode_r = -1;
  std::string mode_family = "auto";
  std::string solver = "gmres";
  std::string initial = "modal";
  Real tol = 1e-5;
  int max_iters = 2000;
  // section
  std::string section = "rect:1,1";
  // output
  std::string out_dir = ".";
  bool svg = false;
  bool check = false;
  std::uint64_t seed = 0;
  // runtime only, never serialized
  bool dry_run = false;

  bool operator==(const RunConfig& other) const;
};

RunConfig default_config();

// key = value lines grouped under cosmetic [section] headers; # and ; start
// comments. Unknown keys raise ConfigError listing the valid keys.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Inverse of parse_config_text up to formatting: parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

// Shared value parsers (also used for CLI flag values).
Real parse_real(const std::string& text, const std::string& what);
int parse_int(const std::string& text, const std::string& what);
std::uint64_t parse_seed(const std::string& text);
bool parse_bool(const std::string& text, const std::string& what);
std::vector<int> parse_int_list(const std::string& text, const std::string& what);
std::vector<std::string> split_list(const std::string& text);

// "rect:W,H", "disk:R", "annulus:RI,RO", or "mask:PATH".
CrossSection parse_section(const std::string& text);

std::vector<ModeFamily> parse_families(const std::vector<std::string>& names);
TransmissionSpec make_transmission(const RunConfig& config);

// Damping tokens: "0", "1", "k" (= Re k), "inv_k" (= 1/Re k), or a number.
Real resolve_sigma_token(const std::string& token, Real k_re);

// Full conversion with validation of every cross-field constraint.
SweepConfig make_sweep_config(const RunConfig& config);

}  // namespace wgs
