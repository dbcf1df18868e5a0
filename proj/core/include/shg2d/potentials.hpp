#pragma once

#include <memory>

#include <Eigen/Dense>

#include "shg2d/geometry.hpp"

namespace shg2d::potentials {

using geometry::QuadratureGrid;
using GridPtr = std::shared_ptr<const QuadratureGrid>;

enum class OperatorKind { SingleLayer, KStar, DoubleLayerTrace, Hypersingular };

const char* to_string(OperatorKind kind);

struct OperatorMatrix {
  OperatorKind kind = OperatorKind::SingleLayer;
  Eigen::MatrixXd entries;

  Eigen::VectorXd apply(const Eigen::VectorXd& density) const { return entries * density; }
};

// Values at the nodes of a shared grid.
struct BoundaryDensity {
  GridPtr grid;
  Eigen::VectorXd values;

  double integral() const;
  double mean() const;  // integral over arc length
  bool is_mean_zero(double tol = 1e-10) const;
  BoundaryDensity without_mean() const;
};

// Kernel-split (Kress) quadrature for S[phi](x_i) = (1/2pi) int ln|x_i - y| phi ds.
OperatorMatrix single_layer_matrix(const QuadratureGrid& g);
// Adjoint double layer, diagonal kappa/(4 pi).
OperatorMatrix kstar_matrix(const QuadratureGrid& g);
// Double-layer boundary operator K, D|- = (1/2 + K), D|+ = (-1/2 + K).
OperatorMatrix double_layer_matrix(const QuadratureGrid& g);
// Dense normal derivative of the double layer, built by composition.
OperatorMatrix hypersingular_matrix(const QuadratureGrid& g, const OperatorMatrix& single);

// d/dnu D[phi] = (1/h) d/dtheta S[(1/h) d/dtheta phi]. Throws ResolutionLoss
// when phi carries energy in the top quarter of the spectrum.
Eigen::VectorXd hypersingular_apply(const QuadratureGrid& g, const OperatorMatrix& single,
                                    const Eigen::VectorXd& phi);
BoundaryDensity hypersingular_apply(const BoundaryDensity& phi);

// Closed-form action of the layer operators on cos(n theta) for the circle of
// radius r0: at(r) is the potential at radius r, trace() the boundary operator.
class CircleAction {
 public:
  CircleAction(OperatorKind kind, int n, double r0);
  double at(double r) const;
  double trace() const;

 private:
  OperatorKind kind_;
  int n_;
  double r0_;
};

CircleAction circle_spectral(OperatorKind kind, int n, double r0);

// u(x) = D[phi](x) + S[psi](x) by the smooth trapezoidal rule. Points closer
// than one node spacing to a node throw TooCloseToBoundary.
Eigen::VectorXd evaluate_potentials(const QuadratureGrid& g, const Eigen::VectorXd& phi,
                                    const Eigen::VectorXd& psi, const Eigen::Matrix2Xd& points);

struct SecondKindSolution {
  Eigen::VectorXd values;
  double condition_number = 0.0;
  double residual = 0.0;  // relative, before mean projection
};

constexpr double kMaxConditionNumber = 1e12;

// (lambda I - K*) x = rhs, x projected to zero mean.
SecondKindSolution solve_second_kind(const QuadratureGrid& g, const OperatorMatrix& kstar,
                                     double lambda, const Eigen::VectorXd& rhs);
BoundaryDensity solve_second_kind(const OperatorMatrix& kstar, double lambda,
                                  const BoundaryDensity& rhs);

// ((eps + 1)/2 I - (eps - 1) K*) x = rhs: the transmission system multiplied
// through by (eps - 1), well posed at eps = 1.
SecondKindSolution solve_contrast_system(const QuadratureGrid& g, const OperatorMatrix& kstar,
                                         double eps, const Eigen::VectorXd& rhs);

}  // namespace shg2d::potentials
