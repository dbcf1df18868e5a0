// Runs the eight acceptance criteria and prints one PASS/FAIL line for each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "shg2d/analysis.hpp"
#include "shg2d/analytic.hpp"
#include "shg2d/background.hpp"
#include "shg2d/geometry.hpp"
#include "shg2d/potentials.hpp"
#include "shg2d/solver.hpp"

namespace {

using namespace shg2d;
using background::HarmonicBackground;
using geometry::build_boundary;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

solver::PipelineConfig p1(const geometry::StarBoundary& b, const HarmonicBackground& h) {
  return {b, h, 2.0, 3.0, 1.0, 0.0, 256};
}

Outcome circle_identities() {
  const double r0 = 1.0;
  const auto g = geometry::sample_grid(build_boundary(r0, 0.0, {}), 256);
  const auto S = potentials::single_layer_matrix(g);
  const auto Ks = potentials::kstar_matrix(g);
  const auto K = potentials::double_layer_matrix(g);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(g.n);
  Eigen::Matrix2Xd x(2, 2);
  x << 0.5 * std::cos(0.3), 2.0 * std::cos(0.3), 0.5 * std::sin(0.3), 2.0 * std::sin(0.3);
  double worst = 0.0;
  for (int n = 0; n <= 32; ++n) {
    const Eigen::VectorXd c = (g.theta.array() * n).cos();
    for (const auto* op : {&S, &Ks, &K}) {
      const double lam = potentials::circle_spectral(op->kind, n, r0).trace();
      worst = std::max(worst, (op->apply(c) - lam * c).lpNorm<Eigen::Infinity>());
    }
    const auto s = potentials::evaluate_potentials(g, zero, c, x);
    const auto d = potentials::evaluate_potentials(g, c, zero, x);
    for (int k = 0; k < 2; ++k) {
      const double r = x.col(k).norm();
      const auto sa = potentials::circle_spectral(potentials::OperatorKind::SingleLayer, n, r0);
      const auto da = potentials::circle_spectral(potentials::OperatorKind::DoubleLayerTrace, n, r0);
      worst = std::max(worst, std::abs(s(k) - sa.at(r) * std::cos(n * 0.3)));
      worst = std::max(worst, std::abs(d(k) - da.at(r) * std::cos(n * 0.3)));
    }
  }
  return {worst < 1e-8, fmt("max error %.3g over modes 0..32 at N=256", worst)};
}

Outcome forbidden_dipole() {
  const auto res = solver::shg_pipeline(p1(build_boundary(1, 0, {}), HarmonicBackground::uniform(1)));
  const auto spec = analysis::multipole_moments(res.sh, 16);
  const double c1 = spec.find(1) ? spec.find(1)->amplitude() : 0.0;
  const double c2 = spec.cos_coeff(2);
  const double ratio = c1 / std::abs(c2);
  const double rel = std::abs(c2 - 8 * kPi / 3) / (8 * kPi / 3);
  return {ratio < 1e-8 && rel < 1e-8, fmt("|c1|/|c2| = %.3g, c2 = %.15g (rel error %.3g)", ratio, c2, rel)};
}

Outcome trefoil_dipole() {
  const double m1 = -40 * kPi / 9;
  auto mismatch = [&](double eps) {
    const auto res = solver::shg_pipeline(p1(build_boundary(1, eps, {{3, 1}}), HarmonicBackground::uniform(1)));
    const double c1 = analysis::multipole_moments(res.sh, 8).cos_coeff(1);
    return std::abs(c1 - eps * m1) / std::abs(eps * m1);
  };
  const double e1 = mismatch(1e-3), e2 = mismatch(5e-4);
  const double ratio = e1 / e2;
  return {e1 < 5e-3 && std::abs(ratio - 4.0) <= 0.8,
          fmt("relative mismatch %.3g at eps=1e-3, %.3g at 5e-4, ratio %.3f", e1, e2, ratio)};
}

Outcome multipole_order_law() {
  bool ok = true;
  std::string detail;
  for (int n : {4, 5, 6}) {
    const auto fo = analysis::first_order_response(p1(build_boundary(1, 1e-3, {{n, 1}}), HarmonicBackground::uniform(1)), 16);
    const int lowest = analysis::classify(fo.spectrum).lowest_mode;
    const auto fit = analysis::decay_exponent([&fo](const Eigen::Matrix2Xd& x) { return fo.evaluate(x); },
                                              {10, 20, 40, 80}, 1.0);
    ok = ok && lowest == n - 2 && std::abs(fit.exponent + (n - 2)) <= 0.02;
    detail += fmt("n=%d: lowest %d, exponent %.4f; ", n, lowest, fit.exponent);
  }
  return {ok, detail};
}

Outcome resonance_orders() {
  const auto cfg = p1(build_boundary(1, 1e-3, {{3, 1}}), HarmonicBackground::uniform(1));
  const std::vector<double> analytic_deltas{1e-2, 1e-3, 1e-4, 1e-5};
  const std::vector<double> numeric_deltas{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  bool ok = true;
  std::string detail;
  const std::pair<analysis::Channel, double> expected[] = {
      {analysis::Channel::Omega, -3.0}, {analysis::Channel::TwoOmega, -2.0}, {analysis::Channel::Both, -4.0}};
  for (const auto& [ch, slope] : expected) {
    const auto a = analysis::resonance_scan(cfg, ch, analytic_deltas, analysis::ScanPath::Analytic, 4);
    const auto n = analysis::resonance_scan(cfg, ch, numeric_deltas, analysis::ScanPath::Numeric, 4);
    ok = ok && std::abs(a.fitted_slope - slope) <= 0.05 && std::abs(n.fitted_slope - a.fitted_slope) <= 0.1;
    detail += fmt("%s: analytic %.4f numeric %.4f; ", analysis::to_string(ch), a.fitted_slope, n.fitted_slope);
  }
  return {ok, detail};
}

Outcome nonuniform_backgrounds() {
  // (a) single degree-2 term on the disk.
  const auto qa = solver::shg_pipeline(p1(build_boundary(1, 0, {}), HarmonicBackground({{2, -1}})));
  const auto sa = analysis::multipole_moments(qa.sh, 16);
  const double c4 = analytic::sh_leading({1, 1, 2, 3, 1, 0}, 2).exterior_coeff(4, -4);
  const double rel_a = std::abs(sa.cos_coeff(4) - c4) / std::abs(c4);
  double leak = 0.0;
  for (const auto& e : sa.entries)
    if (e.m != 4) leak = std::max(leak, e.amplitude() / std::abs(c4));
  leak = std::max(leak, std::abs(sa.monopole_log_coeff) / std::abs(c4));
  // (b) degrees 1 and 2 with equal weight.
  const auto qb = solver::shg_pipeline(p1(build_boundary(1, 0, {}), HarmonicBackground({{1, -1}, {2, -1}})));
  const auto sb = analysis::multipole_moments(qb.sh, 16);
  const double rel_b = std::abs(sb.cos_coeff(1) - 32 * kPi / 3) / (32 * kPi / 3);
  // (c) five-fold shape in the degree-2 field.
  const double eps = 1e-3;
  const auto qc = solver::shg_pipeline(p1(build_boundary(1, eps, {{5, 1}}), HarmonicBackground({{2, -1}})));
  const auto sc = analysis::multipole_moments(qc.sh, 16);
  const double m1 = analytic::sh_first_order({1, 1, 2, 3, 1, 0}, 5, 2).amplitude(1);
  const int lowest = analysis::classify(sc).lowest_mode;
  const double rel_c = std::abs(sc.cos_coeff(1) - eps * m1) / std::abs(eps * m1);
  return {rel_a < 1e-8 && leak < 1e-8 && rel_b < 1e-8 && lowest == 1 && rel_c < 5e-3,
          fmt("(a) c4 rel %.3g, other modes %.3g; (b) c1 rel %.3g; (c) lowest %d, c1 rel %.3g", rel_a, leak, rel_b,
              lowest, rel_c)};
}

Outcome symmetry_suite() {
  int failures = 0;
  for (int n = 1; n <= 12; ++n) {
    const auto b = build_boundary(1.0, 0.2, {{n, 1.0}});
    const auto rep = geometry::symmetry_degree(b, 12);
    if (!rep.degree || *rep.degree != 2 * n) ++failures;
    for (int q = 1; q <= 12; ++q)
      if (geometry::dihedral_invariance(b, q) != (n % q == 0)) ++failures;
  }
  for (int l = 1; l <= 12; ++l)
    for (int q = 1; q <= 12; ++q)
      if (background::symmetry_order(HarmonicBackground({{l, -1.0}}), q) != (l % q == 0)) ++failures;
  return {failures == 0, fmt("%d failures over 12 degrees, 144 dihedral and 144 background checks", failures)};
}

Outcome asymptotic_consistency() {
  const analytic::DiskParams dp{1, 1, 2, 3, 1, 0};
  const auto u0 = analytic::sh_leading(dp, 1);
  const auto u1 = analytic::sh_first_order(dp, 3, 1);
  const int k = 256;
  const double R = 3.0;
  Eigen::Matrix2Xd x(2, k);
  for (int j = 0; j < k; ++j) x.col(j) << R * std::cos(2 * kPi * j / k), R * std::sin(2 * kPi * j / k);
  std::vector<double> res;
  for (double eps : {4e-3, 2e-3, 1e-3}) {
    const auto sol = solver::shg_pipeline(p1(build_boundary(1, eps, {{3, 1}}), HarmonicBackground::uniform(1)));
    const auto u = solver::evaluate(sol.sh, x);
    double worst = 0.0;
    for (int j = 0; j < k; ++j) {
      const double t = 2 * kPi * j / k;
      double model = u0.exterior_value(R, t);
      for (const auto& e : u1.entries) model += eps * e.amplitude * std::cos(e.mode * t) / std::pow(R, e.mode);
      worst = std::max(worst, std::abs(u(j) - model));
    }
    res.push_back(worst);
  }
  const double r1 = res[0] / res[1], r2 = res[1] / res[2];
  const bool ok = std::abs(r1 - 4.0) <= 0.8 && std::abs(r2 - 4.0) <= 0.8;
  return {ok, fmt("residuals %.3g, %.3g, %.3g; ratios %.3f, %.3f", res[0], res[1], res[2], r1, r2)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // zero means no time limit
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "circle operator identities", 5.0, circle_identities},
      {2, "forbidden dipole on the disk", 2.0, forbidden_dipole},
      {3, "trefoil dipole from symmetry breaking", 5.0, trefoil_dipole},
      {4, "multipole order law n-2", 0.0, multipole_order_law},
      {5, "plasmon resonance orders", 0.0, resonance_orders},
      {6, "non-uniform backgrounds", 0.0, nonuniform_backgrounds},
      {7, "symmetry suite", 10.0, symmetry_suite},
      {8, "second-order remainder", 0.0, asymptotic_consistency},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("[%s] %d %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                in_time ? "" : ", over time budget");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
