#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "shg2d/cli.hpp"
#include "shg2d/errors.hpp"

namespace shg2d::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing key '" + key + "' in " + where);
  return obj.at(key);
}

double number(const json& v, const std::string& name) {
  if (!v.is_number()) throw ConfigError(name + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(name + " must be finite");
  return d;
}

int integer(const json& v, const std::string& name) {
  if (!v.is_number_integer()) throw ConfigError(name + " must be an integer");
  return v.get<int>();
}

std::vector<double> number_list(const json& v, const std::string& name) {
  if (!v.is_array()) throw ConfigError(name + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, name + " entry"));
  return out;
}

template <typename F>
auto rethrow_as_config(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.kind() + ": " + e.what());
  }
}

void validate(const RunConfig& cfg) {
  rethrow_as_config([&] { (void)cfg.boundary(); return 0; });
  rethrow_as_config([&] { (void)cfg.harmonic_background(); return 0; });
  if (cfg.grid_n < 64 || cfg.grid_n % 2 != 0) throw ConfigError("grid_n must be even and >= 64");
  if (cfg.m_max < 1 || cfg.m_max > cfg.grid_n / 4) throw ConfigError("m_max must lie in [1, grid_n/4]");
  if (cfg.radii.size() < 3) throw ConfigError("radii needs at least three entries");
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    if (cfg.radii[i] < 5.0 * cfg.r0) throw ConfigError("radii must be >= 5 r0");
    if (i > 0 && !(cfg.radii[i] > cfg.radii[i - 1])) throw ConfigError("radii must increase");
    if (i > 1 && std::abs(cfg.radii[i] / cfg.radii[i - 1] - cfg.radii[1] / cfg.radii[0]) >
                     1e-6 * cfg.radii[1] / cfg.radii[0])
      throw ConfigError("radii must be geometrically spaced");
  }
  if (cfg.q_max < 1) throw ConfigError("q_max must be >= 1");
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0)) throw ConfigError("rel_tol must lie in (0, 1)");
  if (cfg.scan) {
    const auto& d = cfg.scan->deltas;
    if (d.size() < 4) throw ConfigError("scan.deltas needs at least four values");
    double lo = d.front(), hi = d.front();
    for (double x : d) {
      if (!(x > 1e-6 && x < 1e-1)) throw ConfigError("scan.deltas must lie in (1e-6, 1e-1)");
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if (hi / lo < 100.0 * (1.0 - 1e-9)) throw ConfigError("scan.deltas must span two decades");
  }
}

}  // namespace

std::optional<Subcommand> parse_subcommand(std::string_view name) {
  if (name == "analytic") return Subcommand::Analytic;
  if (name == "solve") return Subcommand::Solve;
  if (name == "compare") return Subcommand::Compare;
  if (name == "scan") return Subcommand::Scan;
  if (name == "symmetry") return Subcommand::Symmetry;
  return std::nullopt;
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  return std::nullopt;
}

const char* to_string(Subcommand c) {
  switch (c) {
    case Subcommand::Analytic: return "analytic";
    case Subcommand::Solve: return "solve";
    case Subcommand::Compare: return "compare";
    case Subcommand::Scan: return "scan";
    case Subcommand::Symmetry: return "symmetry";
  }
  return "unknown";
}

geometry::StarBoundary RunConfig::boundary() const {
  return geometry::build_boundary(r0, epsilon, modes);
}

background::HarmonicBackground RunConfig::harmonic_background() const {
  return background::HarmonicBackground(background);
}

solver::PipelineConfig RunConfig::pipeline() const {
  return {boundary(), harmonic_background(), eps_omega, eps_2omega, chi_perp, chi_par, grid_n};
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc,
                 {"boundary", "background", "eps_omega", "eps_2omega", "chi_perp", "chi_par",
                  "grid_n", "m_max", "radii", "scan", "output", "format", "q_max", "rel_tol"},
                 "config");
  RunConfig cfg;
  try {
    const auto& b = require(doc, "boundary", "config");
    reject_unknown(b, {"r0", "epsilon", "modes"}, "boundary");
    cfg.r0 = number(require(b, "r0", "boundary"), "boundary.r0");
    cfg.epsilon = b.contains("epsilon") ? number(b.at("epsilon"), "boundary.epsilon") : 0.0;
    if (b.contains("modes")) {
      if (!b.at("modes").is_array()) throw ConfigError("boundary.modes must be an array");
      for (const auto& m : b.at("modes")) {
        reject_unknown(m, {"n", "amplitude"}, "boundary.modes entry");
        cfg.modes.push_back({integer(require(m, "n", "mode"), "mode n"),
                             number(require(m, "amplitude", "mode"), "mode amplitude")});
      }
    }

    const auto& bg = require(doc, "background", "config");
    if (!bg.is_array()) throw ConfigError("background must be an array of terms");
    for (const auto& t : bg) {
      reject_unknown(t, {"degree", "coeff"}, "background term");
      cfg.background.push_back({integer(require(t, "degree", "background term"), "degree"),
                                number(require(t, "coeff", "background term"), "coeff")});
    }

    cfg.eps_omega = number(require(doc, "eps_omega", "config"), "eps_omega");
    cfg.eps_2omega = number(require(doc, "eps_2omega", "config"), "eps_2omega");
    cfg.chi_perp = number(require(doc, "chi_perp", "config"), "chi_perp");
    cfg.chi_par = number(require(doc, "chi_par", "config"), "chi_par");
    if (doc.contains("grid_n")) cfg.grid_n = integer(doc.at("grid_n"), "grid_n");
    if (doc.contains("m_max")) cfg.m_max = integer(doc.at("m_max"), "m_max");
    if (doc.contains("radii")) cfg.radii = number_list(doc.at("radii"), "radii");
    if (doc.contains("q_max")) cfg.q_max = integer(doc.at("q_max"), "q_max");
    if (doc.contains("rel_tol")) cfg.rel_tol = number(doc.at("rel_tol"), "rel_tol");
    if (doc.contains("output")) {
      if (!doc.at("output").is_string()) throw ConfigError("output must be a string");
      cfg.output = doc.at("output").get<std::string>();
    }
    if (doc.contains("format")) {
      const auto& f = doc.at("format");
      const auto parsed = f.is_string() ? parse_format(f.get<std::string>()) : std::nullopt;
      if (!parsed) throw ConfigError("format must be \"json\" or \"csv\"");
      cfg.format = *parsed;
    }
    if (doc.contains("scan")) {
      const auto& s = doc.at("scan");
      reject_unknown(s, {"variable", "deltas", "path"}, "scan");
      ScanBlock block;
      const auto& v = require(s, "variable", "scan");
      const std::string var = v.is_string() ? v.get<std::string>() : "";
      if (var == "omega") block.channel = analysis::Channel::Omega;
      else if (var == "2omega") block.channel = analysis::Channel::TwoOmega;
      else if (var == "both") block.channel = analysis::Channel::Both;
      else throw ConfigError("scan.variable must be omega, 2omega or both");
      block.deltas = number_list(require(s, "deltas", "scan"), "scan.deltas");
      if (s.contains("path")) {
        const auto& p = s.at("path");
        const std::string path = p.is_string() ? p.get<std::string>() : "";
        if (path == "analytic") block.path = analysis::ScanPath::Analytic;
        else if (path == "numeric") block.path = analysis::ScanPath::Numeric;
        else throw ConfigError("scan.path must be analytic or numeric");
      }
      cfg.scan = block;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has the wrong shape: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace shg2d::cli
