#include "cwrev/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cwrev/errors.hpp"

namespace cwrev {

namespace {

constexpr int kW0SampleCount = 4096;
constexpr double kW0RefineTol = 1e-12;
constexpr double kBoundaryTol = 1e-10;

// Maximizes a unimodal f on [lo, hi] by golden-section search.
template <class F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return std::max({fc, fd, f(0.5 * (lo + hi))});
}

}  // namespace

// ---------------------------------------------------------------------------
// SineSeriesProfile

SineSeriesProfile::SineSeriesProfile(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {}

Jet SineSeriesProfile::eval(double t) const noexcept {
  Jet j;
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    const double n = static_cast<double>(2 * k + 1);
    const double s = std::sin(n * t);
    const double c = std::cos(n * t);
    j.h += coefficients_[k] * s;
    j.dh += coefficients_[k] * n * c;
    j.d2h -= coefficients_[k] * n * n * s;
  }
  return j;
}

double SineSeriesProfile::curvature_defect(double t) const noexcept {
  double acc = 0;
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    const double n = static_cast<double>(2 * k + 1);
    acc += coefficients_[k] * (1.0 - n * n) * std::sin(n * t);
  }
  return acc;
}

double SineSeriesProfile::critical_half_width() const {
  // The first harmonic drops out of h + h''.
  if (std::all_of(coefficients_.begin() + std::min<std::size_t>(1, coefficients_.size()),
                  coefficients_.end(), [](double c) { return c == 0.0; })) {
    return 0.0;
  }
  auto mag = [this](double t) { return std::abs(curvature_defect(t)); };
  const double step = kHalfPi / kW0SampleCount;
  std::vector<double> samples(kW0SampleCount + 1);
  for (int i = 0; i <= kW0SampleCount; ++i) samples[i] = mag(i * step);

  double best = 0;
  for (int i = 0; i <= kW0SampleCount; ++i) {
    const double left = i > 0 ? samples[i - 1] : -1.0;
    const double right = i < kW0SampleCount ? samples[i + 1] : -1.0;
    if (samples[i] < left || samples[i] < right) continue;
    const double lo = std::max(0.0, (i - 1) * step);
    const double hi = std::min(kHalfPi, (i + 1) * step);
    best = std::max({best, samples[i], golden_section_max(mag, lo, hi, kW0RefineTol)});
  }
  return best;
}

// ---------------------------------------------------------------------------
// PiecewiseTrigProfile

double TrigPiece::value(double t) const noexcept { return a * std::cos(t) + b * std::sin(t) + sign; }

double TrigPiece::slope(double t) const noexcept { return -a * std::sin(t) + b * std::cos(t); }

PiecewiseTrigProfile::PiecewiseTrigProfile(std::vector<double> breakpoints, int leading_sign,
                                           double vertical_offset)
    : breakpoints_(std::move(breakpoints)),
      leading_sign_(leading_sign),
      vertical_offset_(vertical_offset) {
  if (leading_sign != 1 && leading_sign != -1) {
    throw DomainError("leading sign must be +1 or -1");
  }
  pieces_.reserve(breakpoints_.size() + 1);
  TrigPiece piece{0.0, 0.0, -static_cast<double>(leading_sign), vertical_offset,
                  static_cast<double>(leading_sign)};
  for (double tau : breakpoints_) {
    piece.hi = tau;
    pieces_.push_back(piece);
    // C1 matching across tau when the sign of h + h'' flips.
    const double jump = 2.0 * piece.sign;
    piece.lo = tau;
    piece.a += jump * std::cos(tau);
    piece.b += jump * std::sin(tau);
    piece.sign = -piece.sign;
  }
  piece.hi = kHalfPi;
  pieces_.push_back(piece);
}

PiecewiseTrigProfile PiecewiseTrigProfile::from_cosines(std::span<const double> cosines,
                                                        int leading_sign,
                                                        double vertical_offset) {
  std::vector<double> taus(cosines.size());
  std::transform(cosines.begin(), cosines.end(), taus.begin(),
                 [](double c) { return std::acos(c); });
  return PiecewiseTrigProfile(std::move(taus), leading_sign, vertical_offset);
}

double PiecewiseTrigProfile::closure_residual() const noexcept {
  double sum = 0;
  double alt = 1;
  for (double tau : breakpoints_) {
    sum += alt * std::cos(tau);
    alt = -alt;
  }
  return sum - 0.5;
}

PiecewiseTrigProfile PiecewiseTrigProfile::negated() const {
  return PiecewiseTrigProfile(breakpoints_, -leading_sign_, -vertical_offset_);
}

Jet PiecewiseTrigProfile::eval_fundamental(double t, bool right_limit) const noexcept {
  auto it = right_limit ? std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t)
                        : std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const TrigPiece& p = pieces_[static_cast<std::size_t>(it - breakpoints_.begin())];
  const double v = p.value(t);
  return {v, p.slope(t), p.sign - v};
}

// ---------------------------------------------------------------------------
// Profile

Jet Profile::eval(double t) const noexcept {
  if (const auto* s = as_sine_series()) return s->eval(t);

  const auto& pw = std::get<PiecewiseTrigProfile>(rep_);
  double u = std::remainder(t, 2 * kPi);  // [-pi, pi]
  double sh = 1, sdh = 1, sd2h = 1;
  bool right = true;
  if (u > kHalfPi) {
    u = kPi - u;  // h(t) = h(pi - t)
    sdh = -sdh;
    right = !right;
  } else if (u < -kHalfPi) {
    u = -kPi - u;
    sdh = -sdh;
    right = !right;
  }
  if (u < 0) {  // h is odd
    u = -u;
    sh = -sh;
    sd2h = -sd2h;
    right = !right;
  }
  u = std::clamp(u, 0.0, kHalfPi);
  const Jet j = pw.eval_fundamental(u, right);
  return {sh * j.h, sdh * j.dh, sd2h * j.d2h};
}

std::vector<double> Profile::singular_points() const {
  if (const auto* pw = as_piecewise()) {
    return {pw->breakpoints().begin(), pw->breakpoints().end()};
  }
  return {};
}

double w0(const Profile& profile) {
  if (profile.is_piecewise()) return 1.0;
  return profile.as_sine_series()->critical_half_width();
}

// ---------------------------------------------------------------------------
// Validation

std::string ValidationReport::summary() const {
  if (violations.empty()) return "valid";
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].constraint << " (residual " << violations[i].residual << ")";
  }
  return os.str();
}

ValidationReport validate(const Profile& profile) {
  ValidationReport report;
  auto check = [&report](const char* name, double residual, double tol) {
    if (!(std::abs(residual) <= tol)) report.violations.push_back({name, std::abs(residual)});
  };

  if (const auto* s = profile.as_sine_series()) {
    for (double c : s->coefficients()) {
      if (!std::isfinite(c)) {
        report.violations.push_back({"finite coefficients", c});
        return report;
      }
    }
    check("h(0) = 0", s->eval(0.0).h, kBoundaryTol);
    check("h'(pi/2) = 0", s->eval(kHalfPi).dh, kBoundaryTol);
    return report;
  }

  const auto& pw = *profile.as_piecewise();
  const auto taus = pw.breakpoints();
  for (double tau : taus) {
    if (!std::isfinite(tau) || tau <= 0.0 || tau >= kHalfPi) {
      report.violations.push_back({"breakpoints inside (0, pi/2)", tau});
      return report;
    }
  }
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (!(taus[i] > taus[i - 1])) {
      report.violations.push_back({"strictly increasing breakpoints", taus[i - 1] - taus[i]});
      return report;
    }
  }
  if (!std::isfinite(pw.vertical_offset())) {
    report.violations.push_back({"finite vertical offset", pw.vertical_offset()});
    return report;
  }

  const auto pieces = pw.pieces();
  check("h(0) = 0", pieces.front().value(0.0), kBoundaryTol);
  check("h'(pi/2) = 0", pieces.back().slope(kHalfPi), kBoundaryTol);
  double worst_value = 0, worst_slope = 0;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    const double tau = pieces[i].hi;
    worst_value = std::max(worst_value, std::abs(pieces[i].value(tau) - pieces[i + 1].value(tau)));
    worst_slope = std::max(worst_slope, std::abs(pieces[i].slope(tau) - pieces[i + 1].slope(tau)));
  }
  check("continuity of h at breakpoints", worst_value, kBoundaryTol);
  check("continuity of h' at breakpoints", worst_slope, kBoundaryTol);
  check("closure: alternating cosine sum = 1/2", pw.closure_residual(), kBoundaryTol);
  return report;
}

Profile make_ball(double c) { return SineSeriesProfile({c}); }

// ---------------------------------------------------------------------------
// Body

Body::Body(Profile profile, double half_width)
    : profile_(std::move(profile)), half_width_(half_width), w0_(0.0) {
  const ValidationReport report = validate(profile_);
  if (!report.ok()) throw ValidationError("invalid profile: " + report.summary());
  if (!std::isfinite(half_width_) || half_width_ <= 0.0) {
    throw ValidationError("half-width must be positive and finite");
  }
  w0_ = w0(profile_);
  if (half_width_ < w0_ - kFeasibilityTol) {
    std::ostringstream os;
    os.precision(12);
    os << "half-width " << half_width_ << " is below w0 = " << w0_ << "; h + w is not convex";
    throw ValidationError(os.str());
  }
}

}  // namespace cwrev
