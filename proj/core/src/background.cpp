#include "shg2d/background.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "shg2d/errors.hpp"

namespace shg2d::background {

HarmonicBackground::HarmonicBackground(std::vector<Term> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw InvalidArgument("background needs at least one term");
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.degree < b.degree; });
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].degree < 1) throw InvalidArgument("background degree must be >= 1");
    if (!std::isfinite(terms_[i].coeff)) throw InvalidArgument("background coeff must be finite");
    if (i > 0 && terms_[i].degree == terms_[i - 1].degree)
      throw InvalidArgument("background degrees must be distinct");
  }
}

HarmonicBackground HarmonicBackground::uniform(double amplitude) {
  return HarmonicBackground({{1, -amplitude}});
}

double HarmonicBackground::coeff(int degree) const {
  for (const auto& t : terms_)
    if (t.degree == degree) return t.coeff;
  return 0.0;
}

double HarmonicBackground::scale() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

double evaluate(const HarmonicBackground& h, const Eigen::Vector2d& p) {
  const std::complex<double> z(p.x(), p.y());
  double v = 0.0;
  for (const auto& t : h.terms()) v += t.coeff * std::pow(z, t.degree).real();
  return v;
}

Eigen::Vector2d gradient(const HarmonicBackground& h, const Eigen::Vector2d& p) {
  // For analytic F = u + iv, F' = u_x - i u_y.
  const std::complex<double> z(p.x(), p.y());
  std::complex<double> d(0.0, 0.0);
  for (const auto& t : h.terms()) {
    d += t.coeff * static_cast<double>(t.degree) *
         (t.degree == 1 ? std::complex<double>(1.0, 0.0) : std::pow(z, t.degree - 1));
  }
  return {d.real(), -d.imag()};
}

bool symmetry_order(const HarmonicBackground& h, int q) {
  if (q < 1) throw InvalidArgument("q must be >= 1");
  return std::all_of(h.terms().begin(), h.terms().end(),
                     [q](const Term& t) { return t.degree % q == 0; });
}

int max_symmetry_order(const HarmonicBackground& h) {
  int g = 0;
  for (const auto& t : h.terms()) g = std::gcd(g, t.degree);
  return g;
}

int relative_symmetry_degree(RelativeKind kind, int a, int b) {
  if (a < 1 || b < 1) throw InvalidArgument("relative symmetry degree needs positive integers");
  const int d = kind == RelativeKind::FieldField ? std::abs(a - b) : std::abs(a - 2 * b);
  if (d == 0) throw DegenerateRelativeSymmetry("relative symmetry degree is zero");
  return d;
}

}  // namespace shg2d::background
