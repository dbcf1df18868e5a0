#include "shg2d/solver.hpp"

#include <cmath>
#include <numbers>

#include "shg2d/errors.hpp"

namespace shg2d::solver {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

void check_permittivity(double eps, const char* name) {
  if (!std::isfinite(eps)) throw InvalidArgument(std::string(name) + " must be finite");
  if (eps == -1.0) throw ResonantPermittivity(std::string(name) + " = -1");
}

void check_same_grid(const OperatorsPtr& ops, const potentials::GridPtr& grid) {
  if (!grid || grid->n != ops->grid->n)
    throw InvalidArgument("sources were built on a different grid");
  if (grid == ops->grid) return;
  const double scale = ops->grid->boundary.r0();
  if ((grid->point - ops->grid->point).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidArgument("sources were built on a different grid");
}

}  // namespace

std::shared_ptr<const BoundaryOperators> BoundaryOperators::build(const geometry::StarBoundary& b,
                                                                  int n) {
  if (n < 64 || n % 2 != 0) throw InvalidArgument("solver grid must be even and >= 64");
  auto ops = std::make_shared<BoundaryOperators>();
  ops->grid = std::make_shared<const geometry::QuadratureGrid>(geometry::sample_grid(b, n));
  ops->single_layer = potentials::single_layer_matrix(*ops->grid);
  ops->kstar = potentials::kstar_matrix(*ops->grid);
  ops->double_layer = potentials::double_layer_matrix(*ops->grid);
  return ops;
}

LinearSolution solve_linear(const geometry::StarBoundary& b,
                            const background::HarmonicBackground& h, double eps_omega, int n) {
  return solve_linear(BoundaryOperators::build(b, n), h, eps_omega);
}

LinearSolution solve_linear(const OperatorsPtr& ops, const background::HarmonicBackground& h,
                            double eps_omega) {
  check_permittivity(eps_omega, "eps_omega");
  const auto& g = *ops->grid;
  Eigen::VectorXd h_vals(g.n), dn_h(g.n);
  for (int j = 0; j < g.n; ++j) {
    h_vals[j] = background::evaluate(h, g.point.col(j));
    dn_h[j] = background::gradient(h, g.point.col(j)).dot(g.normal.col(j));
  }
  const auto solved =
      potentials::solve_contrast_system(g, ops->kstar, eps_omega, (eps_omega - 1.0) * dn_h);

  LinearSolution lin{ops, h, eps_omega, {ops->grid, solved.values}, {}, {}, solved.condition_number};
  lin.trace_dn_minus = dn_h - 0.5 * solved.values + ops->kstar.apply(solved.values);
  lin.trace_dt_minus = g.arc_derivative(h_vals + ops->single_layer.apply(solved.values));
  return lin;
}

double linear_transmission_residual(const LinearSolution& lin) {
  const auto& g = *lin.ops->grid;
  const Eigen::VectorXd& phi = lin.phi.values;
  const Eigen::VectorXd dn_plus = lin.trace_dn_minus + phi;
  const Eigen::VectorXd mismatch = dn_plus - lin.eps_omega * lin.trace_dn_minus;
  double scale = 0.0;
  for (int j = 0; j < g.n; ++j)
    scale = std::max(scale, background::gradient(lin.background, g.point.col(j)).norm());
  return mismatch.lpNorm<Eigen::Infinity>() / std::max(scale, 1e-300);
}

SurfaceSources surface_sources(const LinearSolution& lin, double chi_perp, double chi_par) {
  if (!std::isfinite(chi_perp) || !std::isfinite(chi_par))
    throw InvalidArgument("susceptibilities must be finite");
  const auto& g = *lin.ops->grid;
  const Eigen::VectorXd dn = lin.eps_omega * lin.trace_dn_minus;
  SurfaceSources src;
  src.grid = lin.ops->grid;
  src.p_perp = chi_perp * dn.array().square();
  src.p_par = 2.0 * chi_par * dn.cwiseProduct(lin.trace_dt_minus);
  src.sigma = -g.arc_derivative(src.p_par);
  return src;
}

SHSolution solve_sh(const geometry::StarBoundary& b, const SurfaceSources& src,
                    double eps_2omega, int n) {
  return solve_sh(BoundaryOperators::build(b, n), src, eps_2omega);
}

SHSolution solve_sh(const OperatorsPtr& ops, const SurfaceSources& src, double eps_2omega) {
  check_permittivity(eps_2omega, "eps_2omega");
  check_same_grid(ops, src.grid);
  const auto& g = *ops->grid;
  const Eigen::VectorXd phi = -kFourPi * src.p_perp;
  const Eigen::VectorXd dn_d = potentials::hypersingular_apply(g, ops->single_layer, phi);
  const Eigen::VectorXd rhs = (eps_2omega - 1.0) * dn_d - kFourPi * src.sigma;

  const double length = g.jacobian.sum() * g.step();
  const double rhs_mean = std::abs(g.integrate(rhs)) / length;
  if (rhs_mean > 1e-8 * std::max(rhs.lpNorm<Eigen::Infinity>(), 1e-300))
    throw MeanZeroViolation("second-harmonic right-hand side has nonzero mean");

  const auto solved = potentials::solve_contrast_system(g, ops->kstar, eps_2omega, rhs);
  return {ops, eps_2omega, {ops->grid, phi}, {ops->grid, solved.values}, solved.condition_number};
}

SHResiduals sh_transmission_residual(const SHSolution& sh, const SurfaceSources& src) {
  const auto& ops = *sh.ops;
  const Eigen::VectorXd& phi = sh.phi.values;
  const Eigen::VectorXd& psi = sh.psi.values;
  // D|+ - D|- = -phi, S continuous; d_nu D continuous, d_nu S|+- = (+-1/2 + K*) psi.
  const Eigen::VectorXd jump = -phi - kFourPi * src.p_perp;
  const Eigen::VectorXd kpsi = ops.kstar.apply(psi);
  const Eigen::VectorXd dn_d = potentials::hypersingular_apply(*ops.grid, ops.single_layer, phi);
  const Eigen::VectorXd flux = (dn_d + 0.5 * psi + kpsi) -
                               sh.eps_2omega * (dn_d - 0.5 * psi + kpsi) + kFourPi * src.sigma;
  const double p_scale = std::max(kFourPi * src.p_perp.lpNorm<Eigen::Infinity>(), 1e-300);
  const double f_scale = std::max({dn_d.lpNorm<Eigen::Infinity>(), psi.lpNorm<Eigen::Infinity>(),
                                   kFourPi * src.sigma.lpNorm<Eigen::Infinity>(), 1e-300});
  return {jump.lpNorm<Eigen::Infinity>() / p_scale, flux.lpNorm<Eigen::Infinity>() / f_scale};
}

Eigen::VectorXd evaluate(const LinearSolution& lin, const Eigen::Matrix2Xd& points) {
  const auto& g = *lin.ops->grid;
  Eigen::VectorXd out = potentials::evaluate_potentials(g, Eigen::VectorXd::Zero(g.n),
                                                        lin.phi.values, points);
  for (Eigen::Index p = 0; p < points.cols(); ++p)
    out[p] += background::evaluate(lin.background, points.col(p));
  return out;
}

Eigen::VectorXd evaluate(const SHSolution& sh, const Eigen::Matrix2Xd& points) {
  return potentials::evaluate_potentials(*sh.ops->grid, sh.phi.values, sh.psi.values, points);
}

PipelineResult shg_pipeline(const PipelineConfig& cfg) {
  return shg_pipeline(cfg, BoundaryOperators::build(cfg.boundary, cfg.grid_n));
}

PipelineResult shg_pipeline(const PipelineConfig& cfg, const OperatorsPtr& ops) {
  auto lin = solve_linear(ops, cfg.background, cfg.eps_omega);
  auto src = surface_sources(lin, cfg.chi_perp, cfg.chi_par);
  auto sh = solve_sh(ops, src, cfg.eps_2omega);
  return {std::move(lin), std::move(src), std::move(sh)};
}

}  // namespace shg2d::solver
