#include "shg2d/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <numbers>
#include <thread>

#include "shg2d/analytic.hpp"
#include "shg2d/errors.hpp"
#include "shg2d/fourier.hpp"

namespace shg2d::analysis {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kScanStepRatio = 1e-3;

using cplx = std::complex<double>;

Eigen::Matrix2Xd circle_points(double radius, int count) {
  Eigen::Matrix2Xd pts(2, count);
  for (int k = 0; k < count; ++k) {
    const double t = 2.0 * kPi * k / count;
    pts(0, k) = radius * std::cos(t);
    pts(1, k) = radius * std::sin(t);
  }
  return pts;
}

int channel_exponent(const analytic::ResonanceExponents& e, Channel c) {
  switch (c) {
    case Channel::Omega: return e.omega;
    case Channel::TwoOmega: return e.two_omega;
    case Channel::Both: return e.both;
  }
  return 0;
}

}  // namespace

double MultipoleEntry::amplitude() const { return std::hypot(cos_coeff, sin_coeff); }

const MultipoleEntry* MultipoleSpectrum::find(int m) const {
  for (const auto& e : entries)
    if (e.m == m) return &e;
  return nullptr;
}

double MultipoleSpectrum::cos_coeff(int m) const {
  const auto* e = find(m);
  return e ? e->cos_coeff : 0.0;
}

double MultipoleSpectrum::max_amplitude() const {
  double best = 0.0;
  for (const auto& e : entries) best = std::max(best, e.amplitude());
  return best;
}

MultipoleSpectrum multipole_moments(const solver::SHSolution& sh, int m_max) {
  const auto& g = *sh.ops->grid;
  if (m_max < 1 || m_max > g.n / 4) throw InvalidArgument("m_max must lie in [1, N/4]");
  const Eigen::VectorXd& phi = sh.phi.values;
  const Eigen::VectorXd& psi = sh.psi.values;
  MultipoleSpectrum spec;
  if (phi.isZero(0.0) && psi.isZero(0.0)) return spec;

  const Eigen::VectorXd ds = g.arc_weights();
  spec.monopole_log_coeff = psi.dot(ds) / (2.0 * kPi);

  std::vector<cplx> w(g.n), nu(g.n), w_pow(g.n, cplx(1.0, 0.0));
  for (int j = 0; j < g.n; ++j) {
    w[j] = {g.point(0, j), g.point(1, j)};
    nu[j] = {g.normal(0, j), g.normal(1, j)};
  }
  Eigen::VectorXd re(g.n), im(g.n);
  const int tail_start = 3 * g.n / 8;
  for (int m = 1; m <= m_max; ++m) {
    // w_pow holds w^(m-1) on entry.
    cplx total(0.0, 0.0);
    for (int j = 0; j < g.n; ++j) {
      const cplx integrand = (w_pow[j] * w[j] * psi[j] / static_cast<double>(m) +
                              w_pow[j] * nu[j] * phi[j]) * g.jacobian[j];
      re[j] = integrand.real();
      im[j] = integrand.imag();
      total += integrand * g.step();
      w_pow[j] *= w[j];
    }
    if (fourier::tail_fraction(re, tail_start) > 1e-3 || fourier::tail_fraction(im, tail_start) > 1e-3)
      throw ResolutionLoss("multipole integrand of order " + std::to_string(m) +
                           " is not resolved by the grid");
    const cplx coeff = -total / (2.0 * kPi);
    spec.entries.push_back({m, coeff.real(), coeff.imag()});
  }
  return spec;
}

MultipoleSpectrum sampled_multipoles(const FieldEvaluator& field, double radius, int m_max,
                                     int samples) {
  if (samples < 16 || samples % 2 != 0) throw InvalidArgument("sample count must be even and >= 16");
  if (m_max < 1 || m_max >= samples / 2) throw InvalidArgument("m_max must lie in [1, samples/2)");
  const Eigen::VectorXd u = field(circle_points(radius, samples));
  const auto c = fourier::analyze(u);
  MultipoleSpectrum spec;
  if (std::abs(std::log(radius)) > 1e-12) spec.monopole_log_coeff = c.cos[0] / std::log(radius);
  for (int m = 1; m <= m_max; ++m) {
    const double scale = std::pow(radius, m);
    spec.entries.push_back({m, c.cos[m] * scale, c.sin[m] * scale});
  }
  return spec;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                    double* rms_residual) {
  if (x.size() != y.size() || x.size() < 2) throw DegenerateFit("need at least two points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(std::abs(y[i]) > 1e-300))
      throw DegenerateFit("log-log fit needs positive abscissae and nonzero values");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(std::abs(y[i]));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0.0) throw DegenerateFit("abscissae are all equal");
  const double slope = sxy / sxx;
  if (rms_residual) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ly[i] - (my + slope * (lx[i] - mx));
      ss += r * r;
    }
    *rms_residual = std::sqrt(ss / n);
  }
  return slope;
}

DecayFit decay_exponent(const FieldEvaluator& field, const std::vector<double>& radii, double r0,
                        int angles) {
  if (radii.size() < 3) throw InvalidArgument("decay fit needs at least three radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 5.0 * r0 * (1.0 - 1e-12)) throw InvalidArgument("decay radii must be >= 5 r0");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw InvalidArgument("decay radii must increase");
  }
  const double ratio = radii[1] / radii[0];
  for (std::size_t i = 2; i < radii.size(); ++i) {
    if (std::abs(radii[i] / radii[i - 1] - ratio) > 1e-6 * ratio)
      throw InvalidArgument("decay radii must be geometrically spaced");
  }
  std::vector<double> peaks;
  for (double r : radii) {
    const double peak = field(circle_points(r, angles)).lpNorm<Eigen::Infinity>();
    if (!(peak >= 1e-300)) throw DegenerateFit("field underflows at r = " + std::to_string(r));
    peaks.push_back(peak);
  }
  DecayFit fit;
  fit.exponent = loglog_slope(radii, peaks, &fit.residual);
  return fit;
}

Classification classify(const MultipoleSpectrum& spec, double rel_tol) {
  const double peak = spec.max_amplitude();
  if (spec.entries.empty() || !(peak > 0.0)) throw EmptySpectrum("spectrum has no nonzero entries");
  for (const auto& e : spec.entries) {
    if (e.amplitude() >= rel_tol * peak) {
      Classification c{e.m, e.m == 1 ? "dipole" : "2^" + std::to_string(e.m) + "-pole"};
      return c;
    }
  }
  throw EmptySpectrum("no entry above threshold");
}

Eigen::VectorXd FirstOrderResult::evaluate(const Eigen::Matrix2Xd& points) const {
  return (solver::evaluate(plus.sh, points) - solver::evaluate(minus.sh, points)) /
         (2.0 * epsilon);
}

FirstOrderResult first_order_response(const solver::PipelineConfig& cfg, int m_max) {
  const double eps = cfg.boundary.epsilon();
  if (!(eps > 0.0)) throw InvalidArgument("first-order response needs epsilon > 0");
  solver::PipelineConfig mirrored = cfg;
  mirrored.boundary = cfg.boundary.mirrored();
  FirstOrderResult out{{}, solver::shg_pipeline(cfg), solver::shg_pipeline(mirrored), eps};
  const auto sp = multipole_moments(out.plus.sh, m_max);
  const auto sm = multipole_moments(out.minus.sh, m_max);
  for (std::size_t i = 0; i < sp.entries.size(); ++i) {
    out.spectrum.entries.push_back({sp.entries[i].m,
                                    (sp.entries[i].cos_coeff - sm.entries[i].cos_coeff) / (2.0 * eps),
                                    (sp.entries[i].sin_coeff - sm.entries[i].sin_coeff) / (2.0 * eps)});
  }
  out.spectrum.monopole_log_coeff = (sp.monopole_log_coeff - sm.monopole_log_coeff) / (2.0 * eps);
  return out;
}

const char* to_string(Channel c) {
  switch (c) {
    case Channel::Omega: return "omega";
    case Channel::TwoOmega: return "2omega";
    case Channel::Both: return "both";
  }
  return "unknown";
}

const char* to_string(ScanPath p) { return p == ScanPath::Analytic ? "analytic" : "numeric"; }

ResonanceScan resonance_scan(const solver::PipelineConfig& cfg, Channel channel,
                             std::vector<double> deltas, ScanPath path, unsigned threads) {
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  if (deltas.size() < 4) throw InvalidArgument("resonance scan needs at least four deltas");
  for (double d : deltas)
    if (!(d > 1e-6 && d < 1e-1)) throw InvalidArgument("deltas must lie in (1e-6, 1e-1)");
  if (deltas.front() / deltas.back() < 100.0 * (1.0 - 1e-9))
    throw InvalidArgument("deltas must span at least two decades");

  ResonanceScan scan;
  scan.channel = channel;
  scan.path = path;

  std::optional<analytic::AnalyticProblem> prob;
  try {
    prob = analytic::match_problem(cfg.boundary, cfg.background, cfg.eps_omega, cfg.eps_2omega,
                                   cfg.chi_perp, cfg.chi_par);
  } catch (const UnsupportedRegime&) {
    if (path == ScanPath::Analytic) throw;
  }

  int mode = 0;
  bool shape_case = false;
  if (prob) {
    const auto pred = analytic::predict_radiation(prob->rcase);
    mode = pred.lowest_mode;
    scan.predicted_slope = -static_cast<double>(channel_exponent(pred.exponents, channel));
    shape_case = std::holds_alternative<analytic::ShapeCase>(prob->rcase);
    if (channel == Channel::Both) {
      if (shape_case) {
        scan.joint_candidates = {{2, 2}, {3, 1}};
      } else {
        scan.joint_candidates = {{pred.exponents.omega, pred.exponents.two_omega}};
      }
    }
  } else {
    mode = classify(multipole_moments(solver::shg_pipeline(cfg).sh, cfg.grid_n / 4)).lowest_mode;
  }

  scan.points.resize(deltas.size());
  std::vector<std::exception_ptr> errors(deltas.size());
  auto run_point = [&](std::size_t i) {
    ScanPoint& pt = scan.points[i];
    pt.delta = deltas[i];
    pt.mode = mode;
    const double ew = channel == Channel::TwoOmega ? cfg.eps_omega : -1.0 + deltas[i];
    const double e2 = channel == Channel::Omega ? cfg.eps_2omega : -1.0 + deltas[i];
    try {
      if (path == ScanPath::Analytic) {
        auto p = *prob;
        p.params.eps_omega = ew;
        p.params.eps_2omega = e2;
        pt.coefficient = analytic::tracked_amplitude(p).amplitude;
      } else {
        solver::PipelineConfig local = cfg;
        local.eps_omega = ew;
        local.eps_2omega = e2;
        if (shape_case) {
          // The tracked quantity is the epsilon-derivative at zero. Near resonance the
          // shape shifts the plasmon eigenvalues by O(epsilon), so the difference step
          // must stay well below delta; the result is per unit shape scale.
          const double step = std::min(cfg.boundary.epsilon(), kScanStepRatio * deltas[i]);
          local.boundary = cfg.boundary.with_epsilon(step);
          const auto fo = first_order_response(local, std::max(mode, 1));
          pt.coefficient = fo.spectrum.cos_coeff(mode) * cfg.boundary.epsilon() / prob->shape_scale;
          pt.condition_number = std::max({fo.plus.linear.condition_number, fo.plus.sh.condition_number,
                                          fo.minus.linear.condition_number, fo.minus.sh.condition_number});
        } else {
          const auto res = solver::shg_pipeline(local);
          pt.coefficient = multipole_moments(res.sh, std::max(mode, 1)).cos_coeff(mode);
          pt.condition_number = std::max(res.linear.condition_number, res.sh.condition_number);
        }
      }
    } catch (const NearSingularSystem& e) {
      pt.dropped = true;
      pt.failure = e.what();
      pt.condition_number = e.condition_number();
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, deltas.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < deltas.size(); ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < deltas.size(); i = next++) run_point(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<double> xs, ys;
  for (const auto& pt : scan.points) {
    if (pt.dropped) continue;
    xs.push_back(pt.delta);
    ys.push_back(pt.coefficient);
  }
  if (xs.size() < 4 || xs.front() / xs.back() < 100.0 * (1.0 - 1e-9))
    throw DegenerateFit("too few usable scan points for a two-decade fit");
  scan.fitted_slope = loglog_slope(xs, ys);
  return scan;
}

}  // namespace shg2d::analysis
