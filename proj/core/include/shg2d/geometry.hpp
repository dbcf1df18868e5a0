#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace shg2d::geometry {

using Vec2 = Eigen::Vector2d;

struct Mode {
  int index = 1;
  double amplitude = 0.0;
};

// Star-shaped curve r(theta) = r0 (1 + epsilon * sum a_n cos(n theta)).
class StarBoundary {
 public:
  StarBoundary(double r0, double epsilon, std::vector<Mode> modes);

  double r0() const { return r0_; }
  double epsilon() const { return epsilon_; }
  const std::vector<Mode>& modes() const { return modes_; }

  double shape(double theta) const;
  double radius(double theta) const;
  double radius_d1(double theta) const;
  double radius_d2(double theta) const;

  Vec2 point(double theta) const;
  Vec2 d1(double theta) const;
  Vec2 d2(double theta) const;

  // epsilon * max|f| below 1e-14.
  bool is_circle() const;
  // Same curve with every mode amplitude negated (the "-epsilon" shape).
  StarBoundary mirrored() const;
  StarBoundary with_epsilon(double epsilon) const;
  int max_mode() const;

 private:
  double r0_;
  double epsilon_;
  std::vector<Mode> modes_;
  double max_abs_shape_ = 0.0;
};

StarBoundary build_boundary(double r0, double epsilon, std::vector<Mode> modes);

struct QuadratureGrid {
  StarBoundary boundary;
  int n = 0;
  Eigen::VectorXd theta;
  Eigen::Matrix2Xd point;
  Eigen::Matrix2Xd normal;
  Eigen::Matrix2Xd tangent;
  Eigen::VectorXd curvature;
  Eigen::VectorXd jacobian;
  Vec2 centroid = Vec2::Zero();

  double step() const;
  // jacobian * step: the trapezoidal arc-length weights.
  Eigen::VectorXd arc_weights() const;
  double integrate(const Eigen::VectorXd& values) const;
  // (1/h) d/dtheta, spectrally.
  Eigen::VectorXd arc_derivative(const Eigen::VectorXd& values) const;
};

QuadratureGrid sample_grid(const StarBoundary& b, int n);

// Largest distance from the image of the sampled curve under a 2x2 linear
// map to the exact curve, checked in both directions.
double hausdorff_under(const StarBoundary& b, const Eigen::Matrix2d& map, int samples);

bool dihedral_invariance(const StarBoundary& b, int q, std::optional<double> tol = {});

struct SymmetryReport {
  std::optional<int> degree;  // empty means infinite
  bool inversion_symmetric = false;
  std::vector<int> invariant_groups;
  bool abelian_largest_group = false;
};

SymmetryReport symmetry_degree(const StarBoundary& b, int q_max = 64,
                               std::optional<double> tol = {});

}  // namespace shg2d::geometry
