#include "shg2d/potentials.hpp"

#include <cmath>
#include <numbers>

#include "shg2d/errors.hpp"
#include "shg2d/fourier.hpp"

namespace shg2d::potentials {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInv2Pi = 0.5 / kPi;

void check_distinct_nodes(const QuadratureGrid& g) {
  const double floor = 1e-14 * g.boundary.r0();
  for (int j = 0; j < g.n; ++j) {
    if ((g.point.col(j) - g.point.col((j + 1) % g.n)).norm() <= floor)
      throw SingularGrid("adjacent quadrature nodes coincide");
  }
}

// Kress weights R_k for the log(4 sin^2) part, k = i - j mod N.
Eigen::VectorXd kress_weights(int n_nodes) {
  const int half = n_nodes / 2;
  Eigen::VectorXd r(n_nodes);
  for (int k = 0; k < n_nodes; ++k) {
    const double t = 2.0 * kPi * k / n_nodes;
    double s = 0.0;
    for (int m = 1; m < half; ++m) s += std::cos(m * t) / m;
    r[k] = -(2.0 * kPi / half) * s - (kPi / (static_cast<double>(half) * half)) * (k % 2 == 0 ? 1.0 : -1.0);
  }
  return r;
}

SecondKindSolution dense_solve(const QuadratureGrid& g, const Eigen::MatrixXd& a,
                               const Eigen::VectorXd& rhs) {
  if (rhs.size() != g.n) throw InvalidArgument("right-hand side does not match the grid");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(cond <= kMaxConditionNumber))
    throw NearSingularSystem("second-kind system is numerically singular", cond);
  SecondKindSolution out;
  out.values = lu.solve(rhs);
  out.condition_number = cond;
  const double scale = rhs.norm();
  out.residual = scale > 0.0 ? (a * out.values - rhs).norm() / scale : (a * out.values).norm();
  const double length = g.jacobian.sum() * g.step();
  out.values.array() -= g.integrate(out.values) / length;
  return out;
}

}  // namespace

const char* to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::SingleLayer: return "single-layer";
    case OperatorKind::KStar: return "kstar";
    case OperatorKind::DoubleLayerTrace: return "double-layer-trace";
    case OperatorKind::Hypersingular: return "hypersingular";
  }
  return "unknown";
}

double BoundaryDensity::integral() const { return grid->integrate(values); }

double BoundaryDensity::mean() const {
  return integral() / (grid->jacobian.sum() * grid->step());
}

bool BoundaryDensity::is_mean_zero(double tol) const {
  return std::abs(integral()) <= tol * std::max(values.lpNorm<Eigen::Infinity>(), 1e-300);
}

BoundaryDensity BoundaryDensity::without_mean() const {
  BoundaryDensity out{grid, values};
  out.values.array() -= mean();
  return out;
}

OperatorMatrix single_layer_matrix(const QuadratureGrid& g) {
  check_distinct_nodes(g);
  const int n = g.n;
  const Eigen::VectorXd r = kress_weights(n);
  const double w = g.step();
  OperatorMatrix s{OperatorKind::SingleLayer, Eigen::MatrixXd(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double smooth;
      if (i == j) {
        smooth = std::log(g.jacobian[i]);
      } else {
        const double dist = (g.point.col(i) - g.point.col(j)).norm();
        const double half_gap = std::sin(0.5 * (g.theta[i] - g.theta[j]));
        smooth = std::log(dist) - 0.5 * std::log(4.0 * half_gap * half_gap);
      }
      const int k = ((i - j) % n + n) % n;
      s.entries(i, j) = kInv2Pi * g.jacobian[j] * (0.5 * r[k] + w * smooth);
    }
  }
  return s;
}

OperatorMatrix kstar_matrix(const QuadratureGrid& g) {
  check_distinct_nodes(g);
  const int n = g.n;
  const double w = g.step();
  OperatorMatrix k{OperatorKind::KStar, Eigen::MatrixXd(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double kernel;
      if (i == j) {
        kernel = g.curvature[i] / (4.0 * kPi);
      } else {
        const Eigen::Vector2d d = g.point.col(i) - g.point.col(j);
        kernel = kInv2Pi * d.dot(g.normal.col(i)) / d.squaredNorm();
      }
      k.entries(i, j) = kernel * g.jacobian[j] * w;
    }
  }
  return k;
}

OperatorMatrix double_layer_matrix(const QuadratureGrid& g) {
  check_distinct_nodes(g);
  const int n = g.n;
  const double w = g.step();
  OperatorMatrix k{OperatorKind::DoubleLayerTrace, Eigen::MatrixXd(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double kernel;
      if (i == j) {
        kernel = g.curvature[j] / (4.0 * kPi);
      } else {
        const Eigen::Vector2d d = g.point.col(j) - g.point.col(i);
        kernel = kInv2Pi * d.dot(g.normal.col(j)) / d.squaredNorm();
      }
      k.entries(i, j) = kernel * g.jacobian[j] * w;
    }
  }
  return k;
}

Eigen::VectorXd hypersingular_apply(const QuadratureGrid& g, const OperatorMatrix& single,
                                    const Eigen::VectorXd& phi) {
  if (single.kind != OperatorKind::SingleLayer || single.entries.rows() != g.n)
    throw InvalidArgument("hypersingular_apply needs the grid's single-layer matrix");
  if (phi.size() != g.n) throw InvalidArgument("density does not match the grid");
  if (fourier::tail_fraction(phi, 3 * g.n / 8) > 1e-8)
    throw ResolutionLoss("density is not resolved by the grid");
  return g.arc_derivative(single.apply(g.arc_derivative(phi)));
}

BoundaryDensity hypersingular_apply(const BoundaryDensity& phi) {
  const auto s = single_layer_matrix(*phi.grid);
  return {phi.grid, hypersingular_apply(*phi.grid, s, phi.values)};
}

OperatorMatrix hypersingular_matrix(const QuadratureGrid& g, const OperatorMatrix& single) {
  const int n = g.n;
  // Spectral differentiation matrix on the equispaced periodic grid.
  Eigen::MatrixXd diff(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        diff(i, j) = 0.0;
      } else {
        const int k = i - j;
        diff(i, j) = 0.5 * (k % 2 == 0 ? 1.0 : -1.0) / std::tan(kPi * k / n);
      }
    }
  }
  const Eigen::VectorXd inv_h = g.jacobian.cwiseInverse();
  const Eigen::MatrixXd arc = inv_h.asDiagonal() * diff;
  return {OperatorKind::Hypersingular, arc * single.entries * arc};
}

CircleAction::CircleAction(OperatorKind kind, int n, double r0) : kind_(kind), n_(n), r0_(r0) {
  if (n < 0) throw InvalidArgument("mode must be >= 0");
  if (!(r0 > 0.0)) throw InvalidArgument("radius must be positive");
}

double CircleAction::at(double r) const {
  if (!(r > 0.0)) throw InvalidArgument("radius must be positive");
  switch (kind_) {
    case OperatorKind::SingleLayer:
      if (n_ == 0) return r0_ * std::log(std::max(r, r0_));
      return -r0_ / (2.0 * n_) * std::pow(r < r0_ ? r / r0_ : r0_ / r, n_);
    case OperatorKind::DoubleLayerTrace:
      if (r == r0_) return trace();
      if (n_ == 0) return r < r0_ ? 1.0 : 0.0;
      return r < r0_ ? 0.5 * std::pow(r / r0_, n_) : -0.5 * std::pow(r0_ / r, n_);
    case OperatorKind::KStar:
    case OperatorKind::Hypersingular:
      break;
  }
  throw InvalidArgument(std::string(to_string(kind_)) + " acts on the boundary only");
}

double CircleAction::trace() const {
  switch (kind_) {
    case OperatorKind::SingleLayer:
      return n_ == 0 ? r0_ * std::log(r0_) : -r0_ / (2.0 * n_);
    case OperatorKind::KStar:
    case OperatorKind::DoubleLayerTrace:
      return n_ == 0 ? 0.5 : 0.0;
    case OperatorKind::Hypersingular:
      return n_ / (2.0 * r0_);
  }
  return 0.0;
}

CircleAction circle_spectral(OperatorKind kind, int n, double r0) { return {kind, n, r0}; }

Eigen::VectorXd evaluate_potentials(const QuadratureGrid& g, const Eigen::VectorXd& phi,
                                    const Eigen::VectorXd& psi, const Eigen::Matrix2Xd& points) {
  if (phi.size() != g.n || psi.size() != g.n) throw InvalidArgument("density does not match the grid");
  const Eigen::VectorXd ds = g.arc_weights();
  const double spacing = ds.maxCoeff();
  const Eigen::VectorXd phi_w = phi.cwiseProduct(ds);
  const Eigen::VectorXd psi_w = psi.cwiseProduct(ds);
  Eigen::VectorXd out(points.cols());
  for (Eigen::Index p = 0; p < points.cols(); ++p) {
    const Eigen::Vector2d x = points.col(p);
    double dl = 0.0, sl = 0.0, nearest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.n; ++j) {
      const Eigen::Vector2d d = g.point.col(j) - x;
      const double d2 = d.squaredNorm();
      nearest = std::min(nearest, d2);
      dl += d.dot(g.normal.col(j)) / d2 * phi_w[j];
      sl += 0.5 * std::log(d2) * psi_w[j];
    }
    if (std::sqrt(nearest) < spacing)
      throw TooCloseToBoundary("evaluation point within one node spacing of the boundary");
    out[p] = kInv2Pi * (dl + sl);
  }
  return out;
}

SecondKindSolution solve_second_kind(const QuadratureGrid& g, const OperatorMatrix& kstar,
                                     double lambda, const Eigen::VectorXd& rhs) {
  if (kstar.kind != OperatorKind::KStar) throw InvalidArgument("solve_second_kind needs K*");
  Eigen::MatrixXd a = -kstar.entries;
  a.diagonal().array() += lambda;
  return dense_solve(g, a, rhs);
}

BoundaryDensity solve_second_kind(const OperatorMatrix& kstar, double lambda,
                                  const BoundaryDensity& rhs) {
  return {rhs.grid, solve_second_kind(*rhs.grid, kstar, lambda, rhs.values).values};
}

SecondKindSolution solve_contrast_system(const QuadratureGrid& g, const OperatorMatrix& kstar,
                                         double eps, const Eigen::VectorXd& rhs) {
  if (kstar.kind != OperatorKind::KStar) throw InvalidArgument("solve_contrast_system needs K*");
  Eigen::MatrixXd a = -(eps - 1.0) * kstar.entries;
  a.diagonal().array() += 0.5 * (eps + 1.0);
  return dense_solve(g, a, rhs);
}

}  // namespace shg2d::potentials
