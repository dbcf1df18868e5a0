#pragma once

#include <memory>

#include <Eigen/Dense>

#include "shg2d/background.hpp"
#include "shg2d/geometry.hpp"
#include "shg2d/potentials.hpp"

namespace shg2d::solver {

using potentials::BoundaryDensity;
using potentials::OperatorMatrix;

// Grid plus the three dense operators every solve on it needs. Immutable and
// shareable across threads.
struct BoundaryOperators {
  potentials::GridPtr grid;
  OperatorMatrix single_layer;
  OperatorMatrix kstar;
  OperatorMatrix double_layer;

  static std::shared_ptr<const BoundaryOperators> build(const geometry::StarBoundary& b, int n);
};
using OperatorsPtr = std::shared_ptr<const BoundaryOperators>;

struct LinearSolution {
  OperatorsPtr ops;
  background::HarmonicBackground background;
  double eps_omega = 0.0;
  BoundaryDensity phi;
  Eigen::VectorXd trace_dn_minus;
  Eigen::VectorXd trace_dt_minus;
  double condition_number = 0.0;
};

struct SurfaceSources {
  potentials::GridPtr grid;
  Eigen::VectorXd p_perp;
  Eigen::VectorXd p_par;
  Eigen::VectorXd sigma;
};

struct SHSolution {
  OperatorsPtr ops;
  double eps_2omega = 0.0;
  BoundaryDensity phi;
  BoundaryDensity psi;
  double condition_number = 0.0;
};

LinearSolution solve_linear(const geometry::StarBoundary& b,
                            const background::HarmonicBackground& h, double eps_omega, int n);
LinearSolution solve_linear(const OperatorsPtr& ops, const background::HarmonicBackground& h,
                            double eps_omega);

// max |d_nu u|+ - eps d_nu u|-| over the nodes, relative to the background gradient scale.
double linear_transmission_residual(const LinearSolution& lin);

SurfaceSources surface_sources(const LinearSolution& lin, double chi_perp, double chi_par);

SHSolution solve_sh(const geometry::StarBoundary& b, const SurfaceSources& src,
                    double eps_2omega, int n);
SHSolution solve_sh(const OperatorsPtr& ops, const SurfaceSources& src, double eps_2omega);

struct SHResiduals {
  double jump = 0.0;  // u+ - u- - 4 pi P_perp, relative
  double flux = 0.0;  // d_nu u+ - eps d_nu u- + 4 pi sigma, relative
};
SHResiduals sh_transmission_residual(const SHSolution& sh, const SurfaceSources& src);

Eigen::VectorXd evaluate(const LinearSolution& lin, const Eigen::Matrix2Xd& points);
Eigen::VectorXd evaluate(const SHSolution& sh, const Eigen::Matrix2Xd& points);

struct PipelineConfig {
  geometry::StarBoundary boundary;
  background::HarmonicBackground background;
  double eps_omega = 2.0;
  double eps_2omega = 3.0;
  double chi_perp = 1.0;
  double chi_par = 0.0;
  int grid_n = 256;
};

struct PipelineResult {
  LinearSolution linear;
  SurfaceSources sources;
  SHSolution sh;
};

PipelineResult shg_pipeline(const PipelineConfig& cfg);
PipelineResult shg_pipeline(const PipelineConfig& cfg, const OperatorsPtr& ops);

}  // namespace shg2d::solver
