#include "shg2d/fourier.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "shg2d/errors.hpp"

namespace shg2d {

void CosineSeries::add(int mode, double coeff) {
  if (coeff == 0.0) return;
  terms_[std::abs(mode)] += coeff;
}

double CosineSeries::coefficient(int mode) const {
  auto it = terms_.find(std::abs(mode));
  return it == terms_.end() ? 0.0 : it->second;
}

double CosineSeries::operator()(double theta) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) sum += c * std::cos(m * theta);
  return sum;
}

CosineSeries& CosineSeries::operator+=(const CosineSeries& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

CosineSeries CosineSeries::operator*(double s) const {
  CosineSeries out;
  for (const auto& [m, c] : terms_) out.add(m, c * s);
  return out;
}

namespace fourier {
namespace {

std::vector<std::complex<double>> forward(const Eigen::VectorXd& samples) {
  if (samples.size() < 2 || samples.size() % 2 != 0)
    throw InvalidArgument("fourier: sample count must be even and >= 2");
  Eigen::FFT<double> fft;
  std::vector<double> in(samples.data(), samples.data() + samples.size());
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, in);
  return spec;
}

}  // namespace

Coefficients analyze(const Eigen::VectorXd& samples) {
  const auto spec = forward(samples);
  const Eigen::Index n = samples.size();
  const Eigen::Index half = n / 2;
  Coefficients out{Eigen::VectorXd::Zero(half + 1), Eigen::VectorXd::Zero(half + 1)};
  const double inv_n = 1.0 / static_cast<double>(n);
  out.cos[0] = spec[0].real() * inv_n;
  for (Eigen::Index k = 1; k < half; ++k) {
    out.cos[k] = 2.0 * spec[k].real() * inv_n;
    out.sin[k] = -2.0 * spec[k].imag() * inv_n;
  }
  out.cos[half] = spec[half].real() * inv_n;
  return out;
}

Eigen::VectorXd derivative(const Eigen::VectorXd& samples) {
  auto spec = forward(samples);
  const Eigen::Index n = samples.size();
  const Eigen::Index half = n / 2;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index freq = k <= half ? k : k - n;
    if (k == half) {
      spec[k] = 0.0;
    } else {
      spec[k] *= std::complex<double>(0.0, static_cast<double>(freq));
    }
  }
  Eigen::FFT<double> fft;
  std::vector<double> out;
  fft.inv(out, spec);
  return Eigen::Map<Eigen::VectorXd>(out.data(), n);
}

double tail_fraction(const Eigen::VectorXd& samples, int k_min) {
  const auto spec = forward(samples);
  const Eigen::Index n = samples.size();
  const Eigen::Index half = n / 2;
  double total = 0.0, tail = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index freq = std::abs(k <= half ? k : k - n);
    const double e = std::norm(spec[k]);
    total += e;
    if (freq >= k_min) tail += e;
  }
  return total > 0.0 ? std::sqrt(tail / total) : 0.0;
}

}  // namespace fourier
}  // namespace shg2d
