#pragma once

#include <map>

#include <Eigen/Dense>

namespace shg2d {

// Finite cosine series sum_m c_m cos(m theta). Negative modes fold onto |m|.
class CosineSeries {
 public:
  CosineSeries() = default;

  void add(int mode, double coeff);
  double coefficient(int mode) const;
  double operator()(double theta) const;
  const std::map<int, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  CosineSeries& operator+=(const CosineSeries& other);
  CosineSeries operator*(double s) const;

 private:
  std::map<int, double> terms_;
};

namespace fourier {

// Real trigonometric coefficients of equispaced periodic samples:
// f(theta) = cos[0] + sum_k cos[k] cos(k theta) + sin[k] sin(k theta), k <= N/2.
struct Coefficients {
  Eigen::VectorXd cos;
  Eigen::VectorXd sin;
};

Coefficients analyze(const Eigen::VectorXd& samples);

// d/dtheta of the trigonometric interpolant. Nyquist mode dropped.
Eigen::VectorXd derivative(const Eigen::VectorXd& samples);

// Fraction of L2 energy carried by modes with |k| >= k_min.
double tail_fraction(const Eigen::VectorXd& samples, int k_min);

}  // namespace fourier
}  // namespace shg2d
