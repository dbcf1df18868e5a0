#pragma once

#include <map>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "shg2d/background.hpp"
#include "shg2d/fourier.hpp"
#include "shg2d/geometry.hpp"

namespace shg2d::analytic {

struct DiskParams {
  double E = 1.0;
  double r0 = 1.0;
  double eps_omega = 2.0;
  double eps_2omega = 3.0;
  double chi_perp = 1.0;
  double chi_par = 0.0;
};

// c * r^power * cos(mode * theta)
struct FieldTerm {
  int mode = 0;
  int power = 0;
  double coeff = 0.0;
};

// Piecewise harmonic field split at r = r0.
class AnalyticField {
 public:
  explicit AnalyticField(double r0) : r0_(r0) {}

  void add_interior(int mode, int power, double coeff);
  void add_exterior(int mode, int power, double coeff);

  const std::vector<FieldTerm>& interior() const { return interior_; }
  const std::vector<FieldTerm>& exterior() const { return exterior_; }
  double r0() const { return r0_; }

  double interior_coeff(int mode, int power) const;
  double exterior_coeff(int mode, int power) const;

  double interior_value(double r, double theta) const;
  double exterior_value(double r, double theta) const;
  double value(const Eigen::Vector2d& p) const;
  double interior_radial_derivative(double r, double theta) const;
  double exterior_radial_derivative(double r, double theta) const;

  AnalyticField& operator+=(const AnalyticField& other);
  AnalyticField scaled(double s) const;

 private:
  double r0_;
  std::vector<FieldTerm> interior_;
  std::vector<FieldTerm> exterior_;
};

struct LeadingSources {
  CosineSeries p_perp;
  CosineSeries sigma;
};

struct BoundaryData {
  CosineSeries i1, i2, i3, i4;
};

struct ModeAmplitude {
  int mode = 0;
  double amplitude = 0.0;
};

struct SHFirstOrderCoeffs {
  int n = 0;
  int degree = 1;
  std::vector<ModeAmplitude> entries;  // modes |n-2l|, n, n+2l in that order
  double amplitude(int mode) const;
  int lowest_mode() const;
};

AnalyticField linear_leading(const DiskParams& p, int degree);
LeadingSources surface_sources_leading(const DiskParams& p, int degree);
AnalyticField sh_leading(const DiskParams& p, int degree);

// First-order fields for f = r0 cos(n theta), i.e. unit shape amplitude.
AnalyticField linear_first_order(const DiskParams& p, int n, int degree);
SHFirstOrderCoeffs sh_first_order(const DiskParams& p, int n, int degree);
// The general-degree coefficient set evaluated at any degree, including 1.
SHFirstOrderCoeffs sh_first_order_general(const DiskParams& p, int n, int degree);
BoundaryData boundary_data_first_order(const DiskParams& p, int n, int degree);

// Background -E (r^m cos m theta + r^l cos l theta) on the disk; exterior only.
AnalyticField sh_two_term(const DiskParams& p, int m, int degree);

struct DiskCase {
  int degree = 1;
};
struct ShapeCase {
  int n = 3;
  int degree = 1;
};
struct TwoTermCase {
  int m = 1;
  int degree = 2;
};
using RadiationCase = std::variant<DiskCase, ShapeCase, TwoTermCase>;

struct ResonanceExponents {
  int omega = 0;
  int two_omega = 0;
  int both = 0;
};

struct RadiationPrediction {
  int lowest_mode = 0;
  ResonanceExponents exponents;
};

RadiationPrediction predict_radiation(const RadiationCase& c);

// A configuration recognized as one of the closed-form cases.
struct AnalyticProblem {
  RadiationCase rcase;
  DiskParams params;
  double shape_scale = 0.0;  // epsilon * a_n for the shape case
};

AnalyticProblem match_problem(const geometry::StarBoundary& b,
                              const background::HarmonicBackground& h, double eps_omega,
                              double eps_2omega, double chi_perp, double chi_par);

// Exterior SH cosine coefficients c_m of c_m cos(m theta) / r^m predicted by
// the closed forms. With first_order_only the shape case returns the
// first-order field (per unit epsilon * a_n); otherwise leading + first order.
std::map<int, double> exterior_spectrum(const AnalyticProblem& prob, bool first_order_only = false);

// Amplitude the resonance scans track: the predicted lowest mode of the SH
// field (first-order per unit shape scale in the shape case).
ModeAmplitude tracked_amplitude(const AnalyticProblem& prob);

}  // namespace shg2d::analytic
