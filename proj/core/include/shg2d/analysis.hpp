#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "shg2d/solver.hpp"

namespace shg2d::analysis {

struct MultipoleEntry {
  int m = 0;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
  double amplitude() const;
};

// Exterior field sum_m (a_m cos m theta + b_m sin m theta) / r^m + L ln r.
struct MultipoleSpectrum {
  std::vector<MultipoleEntry> entries;
  double monopole_log_coeff = 0.0;

  const MultipoleEntry* find(int m) const;
  double cos_coeff(int m) const;
  double max_amplitude() const;
};

// Exact moments of the densities of u = D[phi] + S[psi]. m_max <= N/4.
MultipoleSpectrum multipole_moments(const solver::SHSolution& sh, int m_max);

using FieldEvaluator = std::function<Eigen::VectorXd(const Eigen::Matrix2Xd&)>;

// Fourier coefficients of the field sampled on the circle |x| = radius,
// rescaled by radius^m. Cross-check path for multipole_moments.
MultipoleSpectrum sampled_multipoles(const FieldEvaluator& field, double radius, int m_max,
                                     int samples = 512);

struct DecayFit {
  double exponent = 0.0;
  double residual = 0.0;  // RMS of the log-log fit
};

// Least-squares slope of log max_theta |u| against log r.
DecayFit decay_exponent(const FieldEvaluator& field, const std::vector<double>& radii, double r0,
                        int angles = 256);

struct Classification {
  int lowest_mode = 0;
  std::string label;
};

Classification classify(const MultipoleSpectrum& spec, double rel_tol = 1e-7);

// d/d(epsilon) of the SH field by the central difference between the shape
// and its mirrored (-epsilon) counterpart. Even orders cancel exactly.
struct FirstOrderResult {
  MultipoleSpectrum spectrum;
  solver::PipelineResult plus;
  solver::PipelineResult minus;
  Eigen::VectorXd evaluate(const Eigen::Matrix2Xd& points) const;
  double epsilon = 0.0;
};

FirstOrderResult first_order_response(const solver::PipelineConfig& cfg, int m_max);

enum class Channel { Omega, TwoOmega, Both };
enum class ScanPath { Analytic, Numeric };

const char* to_string(Channel c);
const char* to_string(ScanPath p);

struct ScanPoint {
  double delta = 0.0;
  double coefficient = 0.0;
  int mode = 0;
  std::optional<double> condition_number;
  bool dropped = false;
  std::string failure;
};

struct ResonanceScan {
  Channel channel = Channel::Omega;
  ScanPath path = ScanPath::Analytic;
  std::vector<ScanPoint> points;
  double fitted_slope = 0.0;
  std::optional<double> predicted_slope;
  // Candidate (omega, 2omega) exponent pairs for the simultaneous channel.
  std::vector<std::pair<int, int>> joint_candidates;
};

ResonanceScan resonance_scan(const solver::PipelineConfig& cfg, Channel channel,
                             std::vector<double> deltas, ScanPath path, unsigned threads = 1);

// Least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                    double* rms_residual = nullptr);

}  // namespace shg2d::analysis
