#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "shg2d/analytic.hpp"
#include "shg2d/cli.hpp"
#include "shg2d/errors.hpp"

namespace shg2d::cli {
namespace {

using nlohmann::json;

json field_json(const analytic::AnalyticField& f) {
  auto terms = [](const std::vector<analytic::FieldTerm>& ts) {
    json arr = json::array();
    for (const auto& t : ts) arr.push_back({{"mode", t.mode}, {"power", t.power}, {"coeff", t.coeff}});
    return arr;
  };
  return {{"r0", f.r0()}, {"interior", terms(f.interior())}, {"exterior", terms(f.exterior())}};
}

json spectrum_json(const analysis::MultipoleSpectrum& spec) {
  json arr = json::array();
  for (const auto& e : spec.entries)
    arr.push_back({{"m", e.m}, {"cos", e.cos_coeff}, {"sin", e.sin_coeff}, {"amplitude", e.amplitude()}});
  return {{"modes", arr}, {"log_coeff", spec.monopole_log_coeff}};
}

json classification_json(const analysis::MultipoleSpectrum& spec, double rel_tol) {
  try {
    const auto c = analysis::classify(spec, rel_tol);
    return {{"lowest_mode", c.lowest_mode}, {"label", c.label}};
  } catch (const EmptySpectrum&) {
    return {{"lowest_mode", nullptr}, {"label", "none"}};
  }
}

json decay_json(const analysis::FieldEvaluator& field, const RunConfig& cfg) {
  try {
    const auto fit = analysis::decay_exponent(field, cfg.radii, cfg.r0);
    return {{"radii", cfg.radii}, {"exponent", fit.exponent}, {"residual", fit.residual}};
  } catch (const DegenerateFit& e) {
    return {{"radii", cfg.radii}, {"exponent", nullptr}, {"residual", nullptr}, {"failure", e.what()}};
  }
}

json case_json(const analytic::RadiationCase& rc) {
  if (const auto* d = std::get_if<analytic::DiskCase>(&rc)) return {{"kind", "disk"}, {"degree", d->degree}};
  if (const auto* t = std::get_if<analytic::TwoTermCase>(&rc))
    return {{"kind", "two_term"}, {"m", t->m}, {"degree", t->degree}};
  const auto& s = std::get<analytic::ShapeCase>(rc);
  return {{"kind", "shape"}, {"n", s.n}, {"degree", s.degree}};
}

json params_json(const analytic::DiskParams& p) {
  return {{"E", p.E},
          {"r0", p.r0},
          {"eps_omega", p.eps_omega},
          {"eps_2omega", p.eps_2omega},
          {"chi_perp", p.chi_perp},
          {"chi_par", p.chi_par}};
}

json mode_map_json(const std::map<int, double>& m) {
  json arr = json::array();
  for (const auto& [mode, c] : m) arr.push_back({{"m", mode}, {"coefficient", c}});
  return arr;
}

json prediction_json(const analytic::RadiationPrediction& p) {
  return {{"lowest_mode", p.lowest_mode},
          {"resonance_exponents",
           {{"omega", p.exponents.omega}, {"two_omega", p.exponents.two_omega}, {"both", p.exponents.both}}}};
}

analytic::AnalyticProblem match(const RunConfig& cfg) {
  return analytic::match_problem(cfg.boundary(), cfg.harmonic_background(), cfg.eps_omega, cfg.eps_2omega,
                                 cfg.chi_perp, cfg.chi_par);
}

json analytic_report(const RunConfig& cfg) {
  const auto prob = match(cfg);
  const auto& p = prob.params;
  json doc;
  doc["case"] = case_json(prob.rcase);
  doc["params"] = params_json(p);
  doc["prediction"] = prediction_json(analytic::predict_radiation(prob.rcase));
  doc["exterior_spectrum"] = mode_map_json(analytic::exterior_spectrum(prob));
  const auto tracked = analytic::tracked_amplitude(prob);
  doc["tracked"] = {{"mode", tracked.mode}, {"amplitude", tracked.amplitude}};
  json fields;
  if (const auto* d = std::get_if<analytic::DiskCase>(&prob.rcase)) {
    fields["linear_leading"] = field_json(analytic::linear_leading(p, d->degree));
    fields["sh_leading"] = field_json(analytic::sh_leading(p, d->degree));
    const auto src = analytic::surface_sources_leading(p, d->degree);
    json sources = {{"p_perp", json::array()}, {"sigma", json::array()}};
    for (const auto& [m, c] : src.p_perp.terms()) sources["p_perp"].push_back({{"m", m}, {"coeff", c}});
    for (const auto& [m, c] : src.sigma.terms()) sources["sigma"].push_back({{"m", m}, {"coeff", c}});
    doc["surface_sources"] = sources;
  } else if (const auto* t = std::get_if<analytic::TwoTermCase>(&prob.rcase)) {
    fields["sh_two_term"] = field_json(analytic::sh_two_term(p, t->m, t->degree));
  } else {
    const auto& s = std::get<analytic::ShapeCase>(prob.rcase);
    fields["linear_leading"] = field_json(analytic::linear_leading(p, s.degree));
    fields["sh_leading"] = field_json(analytic::sh_leading(p, s.degree));
    fields["linear_first_order"] = field_json(analytic::linear_first_order(p, s.n, s.degree));
    json m = json::array();
    for (const auto& e : analytic::sh_first_order(p, s.n, s.degree).entries)
      m.push_back({{"m", e.mode}, {"coefficient", e.amplitude}});
    doc["first_order_coefficients"] = m;
    doc["shape_scale"] = prob.shape_scale;
    doc["first_order_spectrum"] = mode_map_json(analytic::exterior_spectrum(prob, true));
  }
  doc["fields"] = fields;
  return doc;
}

json solve_report(const RunConfig& cfg) {
  const auto pc = cfg.pipeline();
  const auto res = solver::shg_pipeline(pc);
  const auto spec = analysis::multipole_moments(res.sh, cfg.m_max);
  const auto res_sh = solver::sh_transmission_residual(res.sh, res.sources);
  json doc;
  doc["grid_n"] = cfg.grid_n;
  doc["spectrum"] = spectrum_json(spec);
  doc["classification"] = classification_json(spec, cfg.rel_tol);
  const auto& sh = res.sh;
  doc["decay"] = decay_json([&sh](const Eigen::Matrix2Xd& x) { return solver::evaluate(sh, x); }, cfg);
  doc["condition_numbers"] = {{"linear", res.linear.condition_number}, {"sh", res.sh.condition_number}};
  doc["residuals"] = {{"linear_flux", solver::linear_transmission_residual(res.linear)},
                      {"sh_jump", res_sh.jump},
                      {"sh_flux", res_sh.flux}};
  if (cfg.epsilon > 0.0) {
    const auto fo = analysis::first_order_response(pc, cfg.m_max);
    json block;
    block["epsilon"] = fo.epsilon;
    block["spectrum"] = spectrum_json(fo.spectrum);
    block["classification"] = classification_json(fo.spectrum, cfg.rel_tol);
    block["decay"] = decay_json([&fo](const Eigen::Matrix2Xd& x) { return fo.evaluate(x); }, cfg);
    doc["first_order"] = block;
  }
  return doc;
}

json comparison_rows(const std::map<int, double>& predicted, const analysis::MultipoleSpectrum& numeric,
                     double rel_tol) {
  std::map<int, double> modes = predicted;
  const double floor = rel_tol * numeric.max_amplitude();
  for (const auto& e : numeric.entries)
    if (e.amplitude() > floor) modes.emplace(e.m, 0.0);
  json rows = json::array();
  for (const auto& [m, ignored] : modes) {
    const auto it = predicted.find(m);
    const double a = it == predicted.end() ? 0.0 : it->second;
    const double n = m == 0 ? numeric.monopole_log_coeff : numeric.cos_coeff(m);
    json row = {{"m", m}, {"analytic", a}, {"numeric", n}, {"abs_error", std::abs(n - a)}};
    row["rel_error"] = a != 0.0 ? json(std::abs(n - a) / std::abs(a)) : json(nullptr);
    rows.push_back(row);
  }
  return rows;
}

json compare_report(const RunConfig& cfg) {
  const auto prob = match(cfg);
  const auto pc = cfg.pipeline();
  const auto res = solver::shg_pipeline(pc);
  const auto spec = analysis::multipole_moments(res.sh, cfg.m_max);
  json doc;
  doc["case"] = case_json(prob.rcase);
  doc["params"] = params_json(prob.params);
  doc["grid_n"] = cfg.grid_n;
  doc["modes"] = comparison_rows(analytic::exterior_spectrum(prob), spec, cfg.rel_tol);
  doc["condition_numbers"] = {{"linear", res.linear.condition_number}, {"sh", res.sh.condition_number}};
  if (std::holds_alternative<analytic::ShapeCase>(prob.rcase)) {
    const auto fo = analysis::first_order_response(pc, cfg.m_max);
    // The numeric derivative is with respect to epsilon; the closed form is per unit epsilon * a_n.
    std::map<int, double> predicted = analytic::exterior_spectrum(prob, true);
    for (auto& [m, c] : predicted) c *= prob.shape_scale / cfg.epsilon;
    doc["first_order"] = {{"epsilon", fo.epsilon}, {"modes", comparison_rows(predicted, fo.spectrum, cfg.rel_tol)}};
  }
  return doc;
}

analysis::ResonanceScan run_scan(const RunConfig& cfg, unsigned threads) {
  if (!cfg.scan) throw ConfigError("scan needs a scan block in the config");
  return analysis::resonance_scan(cfg.pipeline(), cfg.scan->channel, cfg.scan->deltas, cfg.scan->path, threads);
}

json scan_report(const analysis::ResonanceScan& scan) {
  json doc;
  doc["channel"] = analysis::to_string(scan.channel);
  doc["path"] = analysis::to_string(scan.path);
  doc["fitted_slope"] = scan.fitted_slope;
  doc["predicted_slope"] = scan.predicted_slope ? json(*scan.predicted_slope) : json(nullptr);
  json cands = json::array();
  for (const auto& [w, w2] : scan.joint_candidates) cands.push_back({{"omega", w}, {"two_omega", w2}});
  doc["joint_candidates"] = cands;
  json pts = json::array();
  for (const auto& p : scan.points) {
    json row = {{"delta", p.delta}, {"coefficient", p.coefficient}, {"mode", p.mode}, {"dropped", p.dropped}};
    row["cond_number"] = p.condition_number ? json(*p.condition_number) : json(nullptr);
    if (!p.failure.empty()) row["failure"] = p.failure;
    pts.push_back(row);
  }
  doc["points"] = pts;
  return doc;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string scan_csv(const analysis::ResonanceScan& scan) {
  std::string out = "delta,coefficient,mode,cond_number\n";
  for (const auto& p : scan.points) {
    if (p.dropped) continue;
    out += format_double(p.delta) + ',' + format_double(p.coefficient) + ',' + std::to_string(p.mode) + ',' +
           format_double(p.condition_number.value_or(std::nan(""))) + '\n';
  }
  return out;
}

json symmetry_report(const RunConfig& cfg) {
  const auto b = cfg.boundary();
  const auto h = cfg.harmonic_background();
  const auto rep = geometry::symmetry_degree(b, cfg.q_max);
  json doc;
  doc["degree"] = rep.degree ? json(*rep.degree) : json("infinite");
  doc["inversion_symmetric"] = rep.inversion_symmetric;
  doc["invariant_groups"] = rep.invariant_groups;
  doc["abelian_largest_group"] = rep.abelian_largest_group;
  doc["background_symmetry_order"] = background::max_symmetry_order(h);
  auto relative = [](background::RelativeKind kind, int a, int c) {
    try {
      return json(background::relative_symmetry_degree(kind, a, c));
    } catch (const DegenerateRelativeSymmetry&) {
      return json(nullptr);
    }
  };
  json ff = json::array();
  const auto& terms = h.terms();
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      ff.push_back({{"m", terms[i].degree},
                    {"l", terms[j].degree},
                    {"degree", relative(background::RelativeKind::FieldField, terms[i].degree, terms[j].degree)}});
  json sf = json::array();
  if (!b.is_circle())
    for (const auto& m : b.modes())
      for (const auto& t : terms)
        sf.push_back({{"n", m.index},
                      {"l", t.degree},
                      {"degree", relative(background::RelativeKind::ShapeField, m.index, t.degree)}});
  doc["relative_degrees"] = {{"field_field", ff}, {"shape_field", sf}};
  return doc;
}

std::string dump(json doc, Subcommand cmd) {
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = to_string(cmd);
  return doc.dump(2) + "\n";
}

std::string error_document(const Error& e) {
  json doc = {{"schema_version", kSchemaVersion}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
  if (const auto* ns = dynamic_cast<const NearSingularSystem*>(&e))
    doc["error"]["condition_number"] = ns->condition_number();
  return doc.dump(2) + "\n";
}

bool is_config_failure(const Error& e) {
  return dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidArgument*>(&e) ||
         dynamic_cast<const InvalidMode*>(&e) || dynamic_cast<const NonpositiveRadius*>(&e) ||
         dynamic_cast<const UnsupportedRegime*>(&e) || dynamic_cast<const DegenerateRelativeSymmetry*>(&e);
}

std::string csv_sibling(const std::string& path) {
  return std::filesystem::path(path).replace_extension(".csv").string();
}

}  // namespace

std::string render_report(Subcommand cmd, const RunConfig& cfg, unsigned threads) {
  switch (cmd) {
    case Subcommand::Analytic: return dump(analytic_report(cfg), cmd);
    case Subcommand::Solve: return dump(solve_report(cfg), cmd);
    case Subcommand::Compare: return dump(compare_report(cfg), cmd);
    case Subcommand::Scan: return dump(scan_report(run_scan(cfg, threads)), cmd);
    case Subcommand::Symmetry: return dump(symmetry_report(cfg), cmd);
  }
  throw InvalidArgument("unknown subcommand");
}

std::string render_scan_csv(const RunConfig& cfg, unsigned threads) { return scan_csv(run_scan(cfg, threads)); }

unsigned threads_from_env() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* v = std::getenv("SHG2D_THREADS");
  if (!v || !*v) return hw;
  unsigned n = 0;
  const auto r = std::from_chars(v, v + std::char_traits<char>::length(v), n);
  if (r.ec != std::errc() || *r.ptr != '\0' || n == 0) throw ConfigError("SHG2D_THREADS must be a positive integer");
  return n;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw ConfigError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ConfigError("cannot move output into place at " + path);
  }
}

int run(const RunRequest& req, std::ostream& out, std::ostream& err) {
  std::optional<std::string> destination = req.out;
  try {
    RunConfig cfg = load_config(req.config_path);
    if (req.grid_n) {
      cfg.grid_n = *req.grid_n;
      if (cfg.grid_n < 64 || cfg.grid_n % 2 != 0) throw ConfigError("grid_n must be even and >= 64");
      if (cfg.m_max > cfg.grid_n / 4) throw ConfigError("m_max must lie in [1, grid_n/4]");
    }
    if (req.format) cfg.format = *req.format;
    if (!destination) destination = cfg.output;
    if (cfg.format == Format::Csv && req.command != Subcommand::Scan)
      throw ConfigError("csv output is available for scan only");

    auto emit = [&](const std::string& path_or_empty, const std::string& text) {
      if (path_or_empty.empty()) out << text;
      else write_atomic(path_or_empty, text);
    };
    const std::string dest = destination.value_or("");
    if (req.command == Subcommand::Scan) {
      const auto scan = run_scan(cfg, req.threads);
      const std::string csv = scan_csv(scan);
      if (cfg.format == Format::Csv) {
        emit(dest, csv);
      } else {
        emit(dest, dump(scan_report(scan), req.command));
        if (!dest.empty()) write_atomic(csv_sibling(dest), csv);
      }
    } else {
      emit(dest, render_report(req.command, cfg, req.threads));
    }
    return 0;
  } catch (const Error& e) {
    const std::string doc = error_document(e);
    err << doc;
    if (is_config_failure(e)) return 2;
    if (destination) {
      try {
        write_atomic(*destination, doc);
      } catch (const Error&) {
      }
    }
    return 3;
  } catch (const std::exception& e) {
    err << "{\"error\":{\"kind\":\"Internal\",\"message\":" << json(e.what()).dump() << "},\"schema_version\":"
        << kSchemaVersion << "}\n";
    return 3;
  }
}

}  // namespace shg2d::cli
