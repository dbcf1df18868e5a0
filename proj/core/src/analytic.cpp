#include "shg2d/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "shg2d/errors.hpp"

namespace shg2d::analytic {
namespace {

constexpr double kPi = std::numbers::pi;

void check_params(const DiskParams& p) {
  if (!(p.r0 > 0.0)) throw InvalidArgument("disk radius must be positive");
  if (!std::isfinite(p.E) || !std::isfinite(p.eps_omega) || !std::isfinite(p.eps_2omega) ||
      !std::isfinite(p.chi_perp) || !std::isfinite(p.chi_par))
    throw InvalidArgument("disk parameters must be finite");
}

void require_nonresonant_omega(const DiskParams& p) {
  check_params(p);
  if (p.eps_omega == -1.0) throw ResonantPermittivity("eps_omega = -1");
}

void require_nonresonant(const DiskParams& p) {
  require_nonresonant_omega(p);
  if (p.eps_2omega == -1.0) throw ResonantPermittivity("eps_2omega = -1");
}

void require_degree(int degree) {
  if (degree < 1) throw InvalidArgument("background degree must be >= 1");
}

void require_first_order_regime(int n, int degree, bool second_harmonic) {
  require_degree(degree);
  if (n < 3) throw InvalidArgument("shape mode must be >= 3");
  if (degree >= 2 && n <= degree)
    throw UnsupportedRegime("first-order fields need n > l for l >= 2");
  if (second_harmonic && n == 2 * degree)
    throw UnsupportedRegime("n = 2l produces a mode-0 first-order term");
}

// Contrast ratio (1 - eps) / (1 + eps).
double contrast(double eps) { return (1.0 - eps) / (1.0 + eps); }

// chi_perp eps_w^2 eps_2w + 2 chi_par eps_w, the combination every radiating
// coefficient carries.
double radiating_strength(const DiskParams& p) {
  const double ew = p.eps_omega;
  return p.chi_perp * ew * ew * p.eps_2omega + 2.0 * p.chi_par * ew;
}

void add_term(std::vector<FieldTerm>& terms, int mode, int power, double coeff) {
  if (mode < 0) throw InvalidArgument("field mode must be >= 0");
  if (!(power == mode || power == -mode))
    throw InvalidArgument("r^p cos(m theta) is harmonic only for p = +-m");
  for (auto& t : terms) {
    if (t.mode == mode && t.power == power) {
      t.coeff += coeff;
      return;
    }
  }
  terms.push_back({mode, power, coeff});
}

double sum_terms(const std::vector<FieldTerm>& terms, double r, double theta) {
  double v = 0.0;
  for (const auto& t : terms) v += t.coeff * std::pow(r, t.power) * std::cos(t.mode * theta);
  return v;
}

double sum_radial(const std::vector<FieldTerm>& terms, double r, double theta) {
  double v = 0.0;
  for (const auto& t : terms) {
    if (t.power == 0) continue;
    v += t.coeff * t.power * std::pow(r, t.power - 1) * std::cos(t.mode * theta);
  }
  return v;
}

double find_coeff(const std::vector<FieldTerm>& terms, int mode, int power) {
  for (const auto& t : terms)
    if (t.mode == mode && t.power == power) return t.coeff;
  return 0.0;
}

}  // namespace

void AnalyticField::add_interior(int mode, int power, double coeff) {
  add_term(interior_, mode, power, coeff);
}

void AnalyticField::add_exterior(int mode, int power, double coeff) {
  add_term(exterior_, mode, power, coeff);
}

double AnalyticField::interior_coeff(int mode, int power) const {
  return find_coeff(interior_, mode, power);
}

double AnalyticField::exterior_coeff(int mode, int power) const {
  return find_coeff(exterior_, mode, power);
}

double AnalyticField::interior_value(double r, double theta) const {
  return sum_terms(interior_, r, theta);
}

double AnalyticField::exterior_value(double r, double theta) const {
  return sum_terms(exterior_, r, theta);
}

double AnalyticField::value(const Eigen::Vector2d& p) const {
  const double r = p.norm();
  const double theta = std::atan2(p.y(), p.x());
  return r < r0_ ? interior_value(r, theta) : exterior_value(r, theta);
}

double AnalyticField::interior_radial_derivative(double r, double theta) const {
  return sum_radial(interior_, r, theta);
}

double AnalyticField::exterior_radial_derivative(double r, double theta) const {
  return sum_radial(exterior_, r, theta);
}

AnalyticField& AnalyticField::operator+=(const AnalyticField& other) {
  for (const auto& t : other.interior_) add_interior(t.mode, t.power, t.coeff);
  for (const auto& t : other.exterior_) add_exterior(t.mode, t.power, t.coeff);
  return *this;
}

AnalyticField AnalyticField::scaled(double s) const {
  AnalyticField out(r0_);
  for (const auto& t : interior_) out.add_interior(t.mode, t.power, t.coeff * s);
  for (const auto& t : exterior_) out.add_exterior(t.mode, t.power, t.coeff * s);
  return out;
}

double SHFirstOrderCoeffs::amplitude(int mode) const {
  for (const auto& e : entries)
    if (e.mode == mode) return e.amplitude;
  return 0.0;
}

int SHFirstOrderCoeffs::lowest_mode() const {
  int lowest = 0;
  for (const auto& e : entries)
    if (lowest == 0 || e.mode < lowest) lowest = e.mode;
  return lowest;
}

AnalyticField linear_leading(const DiskParams& p, int degree) {
  require_degree(degree);
  require_nonresonant_omega(p);
  const int l = degree;
  AnalyticField u(p.r0);
  u.add_interior(l, l, -p.E * 2.0 / (1.0 + p.eps_omega));
  u.add_exterior(l, l, -p.E);
  u.add_exterior(l, -l, -p.E * contrast(p.eps_omega) * std::pow(p.r0, 2 * l));
  return u;
}

LeadingSources surface_sources_leading(const DiskParams& p, int degree) {
  require_degree(degree);
  require_nonresonant_omega(p);
  const double l = degree;
  const double ew = p.eps_omega;
  const double ratio = ew / (1.0 + ew);
  LeadingSources s;
  const double perp = 2.0 * p.chi_perp * p.E * p.E * ratio * ratio * l * l *
                      std::pow(p.r0, 2.0 * (l - 1.0));
  s.p_perp.add(0, perp);
  s.p_perp.add(2 * degree, perp);
  s.sigma.add(2 * degree, 8.0 * p.chi_par * p.E * p.E * ew * l * l * l *
                              std::pow(p.r0, 2.0 * l - 3.0) / ((1.0 + ew) * (1.0 + ew)));
  return s;
}

AnalyticField sh_leading(const DiskParams& p, int degree) {
  require_degree(degree);
  require_nonresonant(p);
  const int l = degree;
  const double ew = p.eps_omega, e2 = p.eps_2omega;
  const double base = 8.0 * kPi * p.E * p.E * l * l / ((1.0 + ew) * (1.0 + ew));
  AnalyticField u(p.r0);
  u.add_interior(0, 0, -p.chi_perp * ew * ew * base * std::pow(p.r0, 2.0 * (l - 1)));
  u.add_interior(2 * l, 2 * l,
                 -(p.chi_perp * ew * ew - 2.0 * p.chi_par * ew) * base / (1.0 + e2) /
                     (p.r0 * p.r0));
  u.add_exterior(2 * l, -2 * l,
                 radiating_strength(p) * base / (1.0 + e2) * std::pow(p.r0, 4.0 * l - 2.0));
  return u;
}

AnalyticField linear_first_order(const DiskParams& p, int n, int degree) {
  require_first_order_regime(n, degree, false);
  require_nonresonant_omega(p);
  const int l = degree;
  const double ew = p.eps_omega;
  const double g = contrast(ew);
  AnalyticField u(p.r0);
  u.add_interior(n - l, n - l,
                 2.0 * p.E * l * (1.0 - ew) / ((1.0 + ew) * (1.0 + ew)) /
                     std::pow(p.r0, n - 2 * l));
  u.add_exterior(n - l, -(n - l), p.E * l * g * g * std::pow(p.r0, n));
  u.add_exterior(n + l, -(n + l), -p.E * l * g * std::pow(p.r0, n + 2 * l));
  return u;
}

SHFirstOrderCoeffs sh_first_order_general(const DiskParams& p, int n, int degree) {
  require_first_order_regime(n, degree, true);
  require_nonresonant(p);
  const double l = degree;
  const double ew = p.eps_omega, e2 = p.eps_2omega;
  const double cp = p.chi_perp * ew * ew * e2;  // chi_perp eps_w^2 eps_2w
  const double cq = p.chi_par * ew;             // chi_par eps_w
  const double strength = radiating_strength(p);
  const double pre = 8.0 * kPi * p.E * p.E * l * l * std::pow(p.r0, 2.0 * l - 2.0) /
                     ((1.0 + e2) * (1.0 + ew) * (1.0 + ew));
  const double shape_term = ((n - l - 1.0) * ew - (3.0 * n - 3.0 * l + 1.0)) / (1.0 + ew) * cp;

  double low = 0.0;
  if (n > 2 * degree) {
    low = pre *
          (l * (e2 - 3.0) / (1.0 + e2) * cp + shape_term +
           2.0 * ((n - 2.0 * l + 1.0) + (n + 2.0 * l + 1.0) * e2) / (1.0 + e2) * cq) *
          std::pow(p.r0, n - 2.0 * l);
  } else {
    low = pre * (l * cp + shape_term - 2.0 * (n - 2.0 * l + 1.0) * cq) *
          std::pow(p.r0, 2.0 * l - n);
  }
  const double mid =
      2.0 * pre * ((l - 1.0) * cp - contrast(ew) * (n - l) * strength) * std::pow(p.r0, n);
  const double high = pre * (n + 2.0 * l - 1.0) * strength * std::pow(p.r0, n + 2.0 * l);

  SHFirstOrderCoeffs out;
  out.n = n;
  out.degree = degree;
  out.entries = {{std::abs(n - 2 * degree), low}, {n, mid}, {n + 2 * degree, high}};
  return out;
}

SHFirstOrderCoeffs sh_first_order(const DiskParams& p, int n, int degree) {
  if (degree != 1) return sh_first_order_general(p, n, degree);
  require_first_order_regime(n, degree, true);
  require_nonresonant(p);
  const double ew = p.eps_omega, e2 = p.eps_2omega;
  const double cp = p.chi_perp * ew * ew * e2;
  const double cq = p.chi_par * ew;
  const double strength = radiating_strength(p);
  const double pre = 8.0 * kPi * p.E * p.E / ((1.0 + e2) * (1.0 + ew) * (1.0 + ew));

  const double low = pre *
                     ((e2 - 3.0) / (1.0 + e2) * cp +
                      ((n - 2.0) * ew - (3.0 * n - 2.0)) / (1.0 + ew) * cp +
                      2.0 * ((n - 1.0) + (n + 3.0) * e2) / (1.0 + e2) * cq) *
                     std::pow(p.r0, n - 2);
  const double mid = 2.0 * pre * ((ew - 1.0) / (1.0 + ew) * (n - 1.0) * strength) *
                     std::pow(p.r0, n);
  const double high = pre * (n + 1.0) * strength * std::pow(p.r0, n + 2);

  SHFirstOrderCoeffs out;
  out.n = n;
  out.degree = 1;
  out.entries = {{n - 2, low}, {n, mid}, {n + 2, high}};
  return out;
}

BoundaryData boundary_data_first_order(const DiskParams& p, int n, int degree) {
  require_first_order_regime(n, degree, true);
  require_nonresonant(p);
  const double l = degree;
  const double ew = p.eps_omega, e2 = p.eps_2omega;
  const double cp = p.chi_perp, cq = p.chi_par;
  const double g = contrast(ew);
  const double E = p.E, r0 = p.r0;
  const int lo = n - 2 * degree, hi = n + 2 * degree;

  BoundaryData d;
  d.i1.add(n - degree, -E * g * l * std::pow(r0, l));
  d.i1.add(n + degree, -E * g * l * std::pow(r0, l));
  d.i2.add(n - degree, -E * g * l * std::pow(r0, l - 1.0) * (n - l));
  d.i2.add(n + degree, E * g * l * std::pow(r0, l - 1.0) * (n + l));

  const double a3 = 8.0 * kPi * E * E * l * l * std::pow(r0, 2.0 * l - 2.0) / ((1.0 + ew) * (1.0 + ew));
  const double jump3 = ew / (1.0 + e2) * l * (cp * ew * (e2 - 1.0) + 4.0 * cq);
  d.i3.add(lo, a3 * (jump3 - (2.0 * g * (n - l) + (n - l + 1.0)) * cp * ew * ew));
  d.i3.add(n, -a3 * (2.0 * g * (n - l) - 2.0 * (l - 1.0)) * cp * ew * ew);
  d.i3.add(hi, a3 * (jump3 + (n + l - 1.0) * cp * ew * ew));

  const double a4 = 16.0 * kPi * E * E * l * l * std::pow(r0, 2.0 * l - 3.0) / ((1.0 + ew) * (1.0 + ew));
  const double jump4 = ew / (1.0 + e2) * l * (cp * ew * e2 - cq * e2 + cq);
  d.i4.add(lo, a4 * (jump4 - (n - l + 1.0) * cq * ew) * lo);
  d.i4.add(n, a4 * 2.0 * g * (n - l) * cq * ew * n);
  d.i4.add(hi, -a4 * (jump4 + (n + l - 1.0) * cq * ew) * hi);
  return d;
}

AnalyticField sh_two_term(const DiskParams& p, int m, int degree) {
  require_degree(degree);
  if (m < 1) throw InvalidArgument("background degree must be >= 1");
  if (m == degree) throw InvalidArgument("two-term background needs distinct degrees");
  require_nonresonant(p);
  const int l = degree;
  const double ew = p.eps_omega, e2 = p.eps_2omega, r0 = p.r0;
  const double c = radiating_strength(p) * 8.0 * kPi * p.E * p.E /
                   ((1.0 + ew) * (1.0 + ew) * (1.0 + e2));
  const int d = std::abs(m - l);
  AnalyticField u(r0);
  u.add_exterior(2 * m, -2 * m, c * m * m * std::pow(r0, 4.0 * m - 2.0));
  u.add_exterior(2 * l, -2 * l, c * l * l * std::pow(r0, 4.0 * l - 2.0));
  u.add_exterior(m + l, -(m + l), c * 2.0 * m * l * std::pow(r0, 2.0 * (m + l - 1)));
  u.add_exterior(d, -d,
                 p.chi_perp * ew * ew * e2 * 16.0 * kPi * p.E * p.E * m * l /
                     ((1.0 + ew) * (1.0 + ew) * (1.0 + e2)) *
                     std::pow(r0, d + m + l - 2.0));
  return u;
}

RadiationPrediction predict_radiation(const RadiationCase& c) {
  struct Visitor {
    RadiationPrediction operator()(const DiskCase& d) const {
      require_degree(d.degree);
      return {2 * d.degree, {2, 1, 3}};
    }
    RadiationPrediction operator()(const ShapeCase& s) const {
      require_first_order_regime(s.n, s.degree, true);
      const int low = std::abs(s.n - 2 * s.degree);
      return {low, {3, s.n > 2 * s.degree ? 2 : 1, 4}};
    }
    RadiationPrediction operator()(const TwoTermCase& t) const {
      require_degree(t.degree);
      require_degree(t.m);
      const int d = background::relative_symmetry_degree(background::RelativeKind::FieldField,
                                                         t.m, t.degree);
      return {std::min(d, 2 * std::min(t.m, t.degree)), {2, 1, 3}};
    }
  };
  return std::visit(Visitor{}, c);
}

AnalyticProblem match_problem(const geometry::StarBoundary& b,
                              const background::HarmonicBackground& h, double eps_omega,
                              double eps_2omega, double chi_perp, double chi_par) {
  AnalyticProblem prob;
  const auto& terms = h.terms();
  prob.params = {-terms.front().coeff, b.r0(), eps_omega, eps_2omega, chi_perp, chi_par};
  if (b.is_circle()) {
    if (terms.size() == 1) {
      prob.rcase = DiskCase{terms[0].degree};
      return prob;
    }
    if (terms.size() == 2 && terms[0].coeff == terms[1].coeff) {
      prob.rcase = TwoTermCase{terms[0].degree, terms[1].degree};
      return prob;
    }
    throw UnsupportedRegime("closed forms cover one term or two equal-coefficient terms");
  }
  std::vector<geometry::Mode> active;
  for (const auto& m : b.modes())
    if (m.amplitude != 0.0) active.push_back(m);
  if (active.size() != 1 || terms.size() != 1)
    throw UnsupportedRegime("closed forms cover a single shape mode in a single-term background");
  prob.rcase = ShapeCase{active[0].index, terms[0].degree};
  prob.shape_scale = b.epsilon() * active[0].amplitude;
  return prob;
}

std::map<int, double> exterior_spectrum(const AnalyticProblem& prob, bool first_order_only) {
  std::map<int, double> out;
  auto add_field = [&out](const AnalyticField& f, double s) {
    for (const auto& t : f.exterior())
      if (t.power < 0) out[t.mode] += s * t.coeff;
  };
  if (const auto* d = std::get_if<DiskCase>(&prob.rcase)) {
    add_field(sh_leading(prob.params, d->degree), 1.0);
  } else if (const auto* t = std::get_if<TwoTermCase>(&prob.rcase)) {
    add_field(sh_two_term(prob.params, t->m, t->degree), 1.0);
  } else {
    const auto& s = std::get<ShapeCase>(prob.rcase);
    const auto first = sh_first_order(prob.params, s.n, s.degree);
    const double scale = first_order_only ? 1.0 : prob.shape_scale;
    if (!first_order_only) add_field(sh_leading(prob.params, s.degree), 1.0);
    for (const auto& e : first.entries) out[e.mode] += scale * e.amplitude;
  }
  return out;
}

ModeAmplitude tracked_amplitude(const AnalyticProblem& prob) {
  const int mode = predict_radiation(prob.rcase).lowest_mode;
  const auto spec = exterior_spectrum(prob, true);
  const auto it = spec.find(mode);
  return {mode, it == spec.end() ? 0.0 : it->second};
}

}  // namespace shg2d::analytic
