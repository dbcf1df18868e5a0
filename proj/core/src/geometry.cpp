#include "shg2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include <boost/math/tools/roots.hpp>

#include "shg2d/errors.hpp"
#include "shg2d/fourier.hpp"

namespace shg2d::geometry {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<Mode> normalize_modes(std::vector<Mode> modes) {
  for (const auto& m : modes) {
    if (m.index < 1) throw InvalidMode("mode index must be >= 1, got " + std::to_string(m.index));
  }
  std::sort(modes.begin(), modes.end(),
            [](const Mode& a, const Mode& b) { return a.index < b.index; });
  std::vector<Mode> merged;
  for (const auto& m : modes) {
    if (!merged.empty() && merged.back().index == m.index) {
      merged.back().amplitude += m.amplitude;
    } else {
      merged.push_back(m);
    }
  }
  return merged;
}

Eigen::Matrix2d rotation(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

// Distance from p to the curve, Newton on <X(t) - p, X'(t)> = 0 started
// from the best of a few samples around the polar angle of p.
double distance_to_curve(const StarBoundary& b, const Vec2& p, double window) {
  const double phi = std::atan2(p.y(), p.x());
  double best_t = phi;
  double best_d = (b.point(phi) - p).norm();
  constexpr int kProbe = 16;
  for (int k = -kProbe; k <= kProbe; ++k) {
    const double t = phi + window * k / kProbe;
    const double d = (b.point(t) - p).norm();
    if (d < best_d) {
      best_d = d;
      best_t = t;
    }
  }
  auto g = [&](double t) {
    const Vec2 diff = b.point(t) - p;
    const Vec2 x1 = b.d1(t);
    const Vec2 x2 = b.d2(t);
    return std::make_tuple(diff.dot(x1), x1.squaredNorm() + diff.dot(x2));
  };
  const double step = window / kProbe;
  boost::uintmax_t iters = 50;
  try {
    const double t = boost::math::tools::newton_raphson_iterate(
        g, best_t, best_t - 2.0 * step, best_t + 2.0 * step, 50, iters);
    return std::min(best_d, (b.point(t) - p).norm());
  } catch (const boost::math::evaluation_error&) {
    // A flat distance profile: the probe minimum is already the answer.
    return best_d;
  }
}

}  // namespace

StarBoundary::StarBoundary(double r0, double epsilon, std::vector<Mode> modes)
    : r0_(r0), epsilon_(epsilon), modes_(normalize_modes(std::move(modes))) {
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw NonpositiveRadius("r0 must be positive");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw InvalidArgument("epsilon must be finite and >= 0");
  for (const auto& m : modes_) {
    if (!std::isfinite(m.amplitude)) throw InvalidArgument("mode amplitude must be finite");
  }
  const int samples = std::max(4096, 64 * max_mode());
  double min_r = r0_;
  for (int k = 0; k < samples; ++k) {
    const double t = kTwoPi * k / samples;
    max_abs_shape_ = std::max(max_abs_shape_, std::abs(shape(t)));
    min_r = std::min(min_r, radius(t));
  }
  if (min_r <= 0.0) throw NonpositiveRadius("r(theta) reaches " + std::to_string(min_r));
}

double StarBoundary::shape(double theta) const {
  double f = 0.0;
  for (const auto& m : modes_) f += m.amplitude * std::cos(m.index * theta);
  return f;
}

double StarBoundary::radius(double theta) const { return r0_ * (1.0 + epsilon_ * shape(theta)); }

double StarBoundary::radius_d1(double theta) const {
  double f1 = 0.0;
  for (const auto& m : modes_) f1 -= m.amplitude * m.index * std::sin(m.index * theta);
  return r0_ * epsilon_ * f1;
}

double StarBoundary::radius_d2(double theta) const {
  double f2 = 0.0;
  for (const auto& m : modes_) f2 -= m.amplitude * m.index * m.index * std::cos(m.index * theta);
  return r0_ * epsilon_ * f2;
}

Vec2 StarBoundary::point(double theta) const {
  const double r = radius(theta);
  return {r * std::cos(theta), r * std::sin(theta)};
}

Vec2 StarBoundary::d1(double theta) const {
  const double r = radius(theta), r1 = radius_d1(theta);
  const double c = std::cos(theta), s = std::sin(theta);
  return {r1 * c - r * s, r1 * s + r * c};
}

Vec2 StarBoundary::d2(double theta) const {
  const double r = radius(theta), r1 = radius_d1(theta), r2 = radius_d2(theta);
  const double c = std::cos(theta), s = std::sin(theta);
  return {r2 * c - 2.0 * r1 * s - r * c, r2 * s + 2.0 * r1 * c - r * s};
}

bool StarBoundary::is_circle() const { return epsilon_ * max_abs_shape_ < 1e-14; }

StarBoundary StarBoundary::mirrored() const {
  std::vector<Mode> flipped = modes_;
  for (auto& m : flipped) m.amplitude = -m.amplitude;
  return StarBoundary(r0_, epsilon_, std::move(flipped));
}

StarBoundary StarBoundary::with_epsilon(double epsilon) const {
  return StarBoundary(r0_, epsilon, modes_);
}

int StarBoundary::max_mode() const { return modes_.empty() ? 0 : modes_.back().index; }

StarBoundary build_boundary(double r0, double epsilon, std::vector<Mode> modes) {
  return StarBoundary(r0, epsilon, std::move(modes));
}

double QuadratureGrid::step() const { return kTwoPi / n; }

Eigen::VectorXd QuadratureGrid::arc_weights() const { return jacobian * step(); }

double QuadratureGrid::integrate(const Eigen::VectorXd& values) const {
  return step() * values.dot(jacobian);
}

Eigen::VectorXd QuadratureGrid::arc_derivative(const Eigen::VectorXd& values) const {
  return fourier::derivative(values).cwiseQuotient(jacobian);
}

QuadratureGrid sample_grid(const StarBoundary& b, int n) {
  if (n < 16 || n % 2 != 0) throw InvalidArgument("grid size must be even and >= 16");
  QuadratureGrid g{b, n, {}, {}, {}, {}, {}, {}, Vec2::Zero()};
  g.theta.resize(n);
  g.point.resize(2, n);
  g.normal.resize(2, n);
  g.tangent.resize(2, n);
  g.curvature.resize(n);
  g.jacobian.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    const double r = b.radius(t), r1 = b.radius_d1(t), r2 = b.radius_d2(t);
    const Vec2 x1 = b.d1(t);
    const double h = std::hypot(r, r1);
    g.theta[j] = t;
    g.point.col(j) = b.point(t);
    g.jacobian[j] = h;
    g.tangent.col(j) = x1 / h;
    g.normal.col(j) = Vec2(x1.y(), -x1.x()) / h;
    g.curvature[j] = (r * r + 2.0 * r1 * r1 - r * r2) / (h * h * h);
  }
  double area2 = 0.0;
  Vec2 acc = Vec2::Zero();
  for (int j = 0; j < n; ++j) {
    const Vec2 a = g.point.col(j), c = g.point.col((j + 1) % n);
    const double cross = a.x() * c.y() - c.x() * a.y();
    area2 += cross;
    acc += (a + c) * cross;
  }
  g.centroid = acc / (3.0 * area2);
  return g;
}

double hausdorff_under(const StarBoundary& b, const Eigen::Matrix2d& map, int samples) {
  const double window = 8.0 * kTwoPi / samples;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = kTwoPi * k / samples;
    worst = std::max(worst, distance_to_curve(b, map * b.point(t), window));
  }
  return worst;
}

bool dihedral_invariance(const StarBoundary& b, int q, std::optional<double> tol) {
  if (q < 1) throw InvalidArgument("q must be >= 1");
  if (b.is_circle()) return true;
  const double limit = tol.value_or(1e-9 * b.r0());
  const int samples = std::max(256, 16 * q);
  Eigen::Matrix2d reflect;
  reflect << 1.0, 0.0, 0.0, -1.0;
  if (hausdorff_under(b, reflect, samples) > limit) return false;
  if (q == 1) return true;
  const double angle = kTwoPi / q;
  return hausdorff_under(b, rotation(angle), samples) <= limit &&
         hausdorff_under(b, rotation(-angle), samples) <= limit;
}

SymmetryReport symmetry_degree(const StarBoundary& b, int q_max, std::optional<double> tol) {
  if (q_max < 1) throw InvalidArgument("q_max must be >= 1");
  SymmetryReport report;
  if (b.is_circle()) {
    report.inversion_symmetric = true;
    for (int q = 1; q <= q_max; ++q) report.invariant_groups.push_back(q);
    report.abelian_largest_group = false;
    return report;
  }
  const double limit = tol.value_or(1e-9 * b.r0());
  for (int q = 1; q <= q_max; ++q) {
    if (dihedral_invariance(b, q, limit)) report.invariant_groups.push_back(q);
  }
  report.inversion_symmetric =
      hausdorff_under(b, rotation(std::numbers::pi), 256) <= limit;
  if (!report.invariant_groups.empty()) {
    const int q = report.invariant_groups.back();
    report.degree = 2 * q;
    report.abelian_largest_group = q <= 2;
  } else {
    report.degree = 1;
  }
  return report;
}

}  // namespace shg2d::geometry
