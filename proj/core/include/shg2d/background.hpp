#pragma once

#include <vector>

#include <Eigen/Dense>

namespace shg2d::background {

struct Term {
  int degree = 1;
  double coeff = 0.0;
};

// H(x) = sum_l C_l Re(z^l) = sum_l C_l r^l cos(l theta).
class HarmonicBackground {
 public:
  explicit HarmonicBackground(std::vector<Term> terms);

  // Uniform field of amplitude E along x: H = -E x.
  static HarmonicBackground uniform(double amplitude);

  const std::vector<Term>& terms() const { return terms_; }
  double coeff(int degree) const;
  // Sum of |C_l|, used as the scale for relative tolerances.
  double scale() const;

 private:
  std::vector<Term> terms_;
};

double evaluate(const HarmonicBackground& h, const Eigen::Vector2d& p);
Eigen::Vector2d gradient(const HarmonicBackground& h, const Eigen::Vector2d& p);

// True iff every degree is divisible by q.
bool symmetry_order(const HarmonicBackground& h, int q);
// Largest q with symmetry_order true (gcd of the degrees).
int max_symmetry_order(const HarmonicBackground& h);

enum class RelativeKind { FieldField, ShapeField };

// |m - l| for two background degrees, |n - 2l| for shape mode n against degree l.
int relative_symmetry_degree(RelativeKind kind, int a, int b);

}  // namespace shg2d::background
