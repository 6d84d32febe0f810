#include "wgschwarz/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace wgs {
namespace {

std::string trim(const std::string& s) {
  std::size_t lo = 0;
  std::size_t hi = s.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
  return s.substr(lo, hi - lo);
}

std::string format_real(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out;
}

std::string join_ints(const std::vector<int>& items) {
  std::vector<std::string> texts;
  texts.reserve(items.size());
  for (int v : items) texts.push_back(std::to_string(v));
  return join(texts);
}

// One entry per config key: how to read it into the struct and how to print
// it back out. Sections in the serialized form are cosmetic grouping only.
struct KeySpec {
  const char* section;
  const char* key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs = {
      {"problem", "k", [](RunConfig& c, const std::string& v) { c.k_re = parse_real(v, "k"); },
       [](const RunConfig& c) { return format_real(c.k_re); }},
      {"problem", "k_im",
       [](RunConfig& c, const std::string& v) { c.k_im = parse_real(v, "k_im"); },
       [](const RunConfig& c) { return format_real(c.k_im); }},
      {"geometry", "L",
       [](RunConfig& c, const std::string& v) { c.core_length = parse_real(v, "L"); },
       [](const RunConfig& c) { return format_real(c.core_length); }},
      {"geometry", "delta",
       [](RunConfig& c, const std::string& v) { c.overlap = parse_real(v, "delta"); },
       [](const RunConfig& c) { return format_real(c.overlap); }},
      {"geometry", "N_list",
       [](RunConfig& c, const std::string& v) { c.n_list = parse_int_list(v, "N_list"); },
       [](const RunConfig& c) { return join_ints(c.n_list); }},
      {"transmission", "transmission",
       [](RunConfig& c, const std::string& v) { c.transmission = v; },
       [](const RunConfig& c) { return c.transmission; }},
      {"transmission", "pml_sigma",
       [](RunConfig& c, const std::string& v) { c.pml_sigma = parse_real(v, "pml_sigma"); },
       [](const RunConfig& c) { return format_real(c.pml_sigma); }},
      {"transmission", "pml_len",
       [](RunConfig& c, const std::string& v) { c.pml_len = parse_real(v, "pml_len"); },
       [](const RunConfig& c) { return format_real(c.pml_len); }},
      {"sweep", "families",
       [](RunConfig& c, const std::string& v) { c.families = split_list(v); },
       [](const RunConfig& c) { return join(c.families); }},
      {"sweep", "r_min",
       [](RunConfig& c, const std::string& v) { c.r_min = parse_real(v, "r_min"); },
       [](const RunConfig& c) { return format_real(c.r_min); }},
      {"sweep", "r_max",
       [](RunConfig& c, const std::string& v) { c.r_max = parse_real(v, "r_max"); },
       [](const RunConfig& c) { return format_real(c.r_max); }},
      {"sweep", "r_step",
       [](RunConfig& c, const std::string& v) { c.r_step = parse_real(v, "r_step"); },
       [](const RunConfig& c) { return format_real(c.r_step); }},
      {"sweep", "sigma_list",
       [](RunConfig& c, const std::string& v) { c.sigma_list = split_list(v); },
       [](const RunConfig& c) { return join(c.sigma_list); }},
      {"sweep", "table_mode",
       [](RunConfig& c, const std::string& v) { c.table_mode = v; },
       [](const RunConfig& c) { return c.table_mode; }},
      {"sweep", "total_length",
       [](RunConfig& c, const std::string& v) { c.total_length = parse_real(v, "total_length"); },
       [](const RunConfig& c) { return format_real(c.total_length); }},
      {"sweep", "max_modes",
       [](RunConfig& c, const std::string& v) { c.max_modes = parse_int(v, "max_modes"); },
       [](const RunConfig& c) { return std::to_string(c.max_modes); }},
      {"run", "N",
       [](RunConfig& c, const std::string& v) {
         c.subdomains = v == "auto" ? 0 : parse_int(v, "N");
       },
       [](const RunConfig& c) {
         return c.subdomains == 0 ? std::string("auto") : std::to_string(c.subdomains);
       }},
      {"run", "mode_r",
       [](RunConfig& c, const std::string& v) {
         c.mode_r = v == "auto" ? -1 : parse_real(v, "mode_r");
       },
       [](const RunConfig& c) {
         return c.mode_r < 0 ? std::string("auto") : format_real(c.mode_r);
       }},
      {"run", "mode_family",
       [](RunConfig& c, const std::string& v) { c.mode_family = v; },
       [](const RunConfig& c) { return c.mode_family; }},
      {"run", "solver", [](RunConfig& c, const std::string& v) { c.solver = v; },
       [](const RunConfig& c) { return c.solver; }},
      {"run", "initial", [](RunConfig& c, const std::string& v) { c.initial = v; },
       [](const RunConfig& c) { return c.initial; }},
      {"run", "tol", [](RunConfig& c, const std::string& v) { c.tol = parse_real(v, "tol"); },
       [](const RunConfig& c) { return format_real(c.tol); }},
      {"run", "max_iters",
       [](RunConfig& c, const std::string& v) { c.max_iters = parse_int(v, "max_iters"); },
       [](const RunConfig& c) { return std::to_string(c.max_iters); }},
      {"section", "section", [](RunConfig& c, const std::string& v) { c.section = v; },
       [](const RunConfig& c) { return c.section; }},
      {"output", "out_dir", [](RunConfig& c, const std::string& v) { c.out_dir = v; },
       [](const RunConfig& c) { return c.out_dir; }},
      {"output", "svg",
       [](RunConfig& c, const std::string& v) { c.svg = parse_bool(v, "svg"); },
       [](const RunConfig& c) { return c.svg ? "true" : "false"; }},
      {"output", "check",
       [](RunConfig& c, const std::string& v) { c.check = parse_bool(v, "check"); },
       [](const RunConfig& c) { return c.check ? "true" : "false"; }},
      {"output", "seed",
       [](RunConfig& c, const std::string& v) { c.seed = parse_seed(v); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
  };
  return specs;
}

std::string valid_keys() {
  std::string out;
  for (const KeySpec& spec : key_specs()) {
    if (!out.empty()) out += ", ";
    out += spec.key;
  }
  return out;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& other) const {
  const auto tie = [](const RunConfig& c) {
    return std::tie(c.k_re, c.k_im, c.core_length, c.overlap, c.n_list, c.transmission,
                    c.pml_sigma, c.pml_len, c.families, c.r_min, c.r_max, c.r_step, c.sigma_list,
                    c.table_mode, c.total_length, c.max_modes, c.subdomains, c.mode_r,
                    c.mode_family, c.solver, c.initial, c.tol, c.max_iters, c.section, c.out_dir,
                    c.svg, c.check, c.seed);
  };
  return tie(*this) == tie(other);
}

RunConfig default_config() { return RunConfig{}; }

Real parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    Real v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse '" + text + "' as a number for " + what);
  }
}

int parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    int v = std::stoi(t, &used);
    if (used != t.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse '" + text + "' as an integer for " + what);
  }
}

std::uint64_t parse_seed(const std::string& text) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(t, &used);
    if (used != t.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse '" + text + "' as a seed");
  }
}

bool parse_bool(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw ConfigError("cannot parse '" + text + "' as a boolean for " + what);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    out.push_back(parse_int(trim(item), what));
  }
  if (out.empty()) {
    throw ConfigError(what + " must contain at least one integer");
  }
  return out;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig config = default_config();
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("malformed section header at line " + std::to_string(line_no));
      }
      continue;  // grouping only
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value' at line " + std::to_string(line_no) + ": " +
                        line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& specs = key_specs();
    const auto it = std::find_if(specs.begin(), specs.end(),
                                 [&key](const KeySpec& s) { return key == s.key; });
    if (it == specs.end()) {
      throw ConfigError("unknown config key '" + key + "'; valid keys: " + valid_keys());
    }
    it->set(config, value);
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  std::string current_section;
  for (const KeySpec& spec : key_specs()) {
    if (spec.section != current_section) {
      if (!current_section.empty()) out << "\n";
      out << "[" << spec.section << "]\n";
      current_section = spec.section;
    }
    out << spec.key << " = " << spec.get(config) << "\n";
  }
  return out.str();
}

CrossSection parse_section(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string kind = colon == std::string::npos ? text : text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "rect") {
    const std::vector<std::string> parts = split_list(args);
    if (parts.size() != 2) {
      throw ConfigError("rect section needs 'rect:W,H', got '" + text + "'");
    }
    return CrossSection::rectangle(parse_real(parts[0], "section width"),
                                   parse_real(parts[1], "section height"));
  }
  if (kind == "disk") {
    if (args.empty()) {
      throw ConfigError("disk section needs 'disk:R', got '" + text + "'");
    }
    return CrossSection::disk(parse_real(args, "section radius"));
  }
  if (kind == "annulus") {
    const std::vector<std::string> parts = split_list(args);
    if (parts.size() != 2) {
      throw ConfigError("annulus section needs 'annulus:RI,RO', got '" + text + "'");
    }
    return CrossSection::annulus(parse_real(parts[0], "inner radius"),
                                 parse_real(parts[1], "outer radius"));
  }
  if (kind == "mask") {
    if (args.empty()) {
      throw ConfigError("mask section needs 'mask:PATH', got '" + text + "'");
    }
    return CrossSection::raster(load_mask(args));
  }
  throw ConfigError("unknown section kind '" + kind +
                    "'; expected rect:W,H, disk:R, annulus:RI,RO, or mask:PATH");
}

std::vector<ModeFamily> parse_families(const std::vector<std::string>& names) {
  if (names.empty()) {
    throw ConfigError("families must name at least one of te, tm, tem");
  }
  std::vector<ModeFamily> families;
  for (const std::string& name : names) {
    if (name == "te") {
      families.push_back(ModeFamily::TE);
    } else if (name == "tm") {
      families.push_back(ModeFamily::TM);
    } else if (name == "tem") {
      families.push_back(ModeFamily::TEM);
    } else {
      throw ConfigError("unknown mode family '" + name + "'; expected te, tm, or tem");
    }
  }
  return families;
}

TransmissionSpec make_transmission(const RunConfig& config) {
  if (config.transmission == "impedance") {
    return TransmissionSpec::impedance();
  }
  if (config.transmission == "pml") {
    try {
      return TransmissionSpec::pml(config.pml_sigma, config.pml_len);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  if (config.transmission == "dtn") {
    return TransmissionSpec::dtn();
  }
  throw ConfigError("unknown transmission '" + config.transmission +
                    "'; expected impedance, pml, or dtn");
}

Real resolve_sigma_token(const std::string& token, Real k_re) {
  if (token == "0") return 0;
  if (token == "1") return 1;
  if (token == "k") return k_re;
  if (token == "inv_k") {
    if (k_re == 0) {
      throw ConfigError("sigma token inv_k needs a nonzero Re k");
    }
    return 1.0 / k_re;
  }
  const Real v = parse_real(token, "sigma_list entry");
  if (v < 0) {
    throw ConfigError("damping shifts must be nonnegative, got " + token);
  }
  return v;
}

SweepConfig make_sweep_config(const RunConfig& config) {
  SweepConfig sweep;
  sweep.k = Complex(config.k_re, config.k_im);
  try {
    Wavenumber probe(sweep.k);  // validates branch constraints early
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(config.core_length > 0)) throw ConfigError("L must be positive");
  if (!(config.overlap > 0)) throw ConfigError("delta must be positive");
  sweep.core_length = config.core_length;
  sweep.overlap = config.overlap;
  sweep.transmission = make_transmission(config);
  sweep.families = parse_families(config.families);
  if (config.r_min < 0) throw ConfigError("r_min must be nonnegative");
  if (!(config.r_step > 0)) throw ConfigError("r_step must be positive");
  if (config.r_max < config.r_min) throw ConfigError("r_max must be >= r_min");
  sweep.r_min = config.r_min;
  sweep.r_max = config.r_max;
  sweep.r_step = config.r_step;
  if (config.n_list.empty()) throw ConfigError("N_list must not be empty");
  for (int n : config.n_list) {
    if (n < 2) throw ConfigError("every N must be at least 2");
  }
  sweep.n_list = config.n_list;
  for (const std::string& token : config.sigma_list) {
    sweep.damping_shifts.push_back(resolve_sigma_token(token, config.k_re));
  }
  sweep.section = parse_section(config.section);
  if (config.max_modes < 1) throw ConfigError("max_modes must be at least 1");
  sweep.modes_per_family = config.max_modes;
  if (config.table_mode == "weak") {
    sweep.table_mode = SweepConfig::TableMode::Weak;
  } else if (config.table_mode == "strong") {
    sweep.table_mode = SweepConfig::TableMode::Strong;
  } else {
    throw ConfigError("unknown table mode '" + config.table_mode + "'; expected weak or strong");
  }
  if (!(config.total_length > 0)) throw ConfigError("total_length must be positive");
  sweep.total_length = config.total_length;
  sweep.seed = config.seed;
  if (config.initial == "modal") {
    sweep.initial = SweepConfig::Initial::ModalUnit;
  } else if (config.initial == "random") {
    sweep.initial = SweepConfig::Initial::Random;
  } else {
    throw ConfigError("unknown initial '" + config.initial + "'; expected modal or random");
  }
  if (!(config.tol > 0)) throw ConfigError("tol must be positive");
  sweep.gmres_tol = config.tol;
  if (config.max_iters < 1) throw ConfigError("max_iters must be at least 1");
  sweep.gmres_max_iters = config.max_iters;
  return sweep;
}

}  // namespace wgs
