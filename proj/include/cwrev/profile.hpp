#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace cwrev {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2;

/// Slack allowed on w >= w0(h) so that the critical half-width itself is admissible.
inline constexpr double kFeasibilityTol = 1e-9;

/// Value and first two derivatives of a profile at one angle.
struct Jet {
  double h = 0;
  double dh = 0;
  double d2h = 0;
};

/// h(t) = sum_k c_k sin((2k+1) t).
///
/// Each odd harmonic vanishes at 0, has zero slope at pi/2, is odd under
/// t -> t + pi and even under t -> pi - t, so every coefficient vector is an
/// admissible profile.
class SineSeriesProfile {
 public:
  SineSeriesProfile() = default;
  explicit SineSeriesProfile(std::vector<double> coefficients);

  std::span<const double> coefficients() const noexcept { return coefficients_; }

  /// Defined on the whole circle without any reduction.
  Jet eval(double t) const noexcept;

  /// h + h'' = sum_k c_k (1 - (2k+1)^2) sin((2k+1) t).
  double curvature_defect(double t) const noexcept;

  /// Essential supremum of |h + h''| on [0, pi/2].
  double critical_half_width() const;

  friend bool operator==(const SineSeriesProfile&, const SineSeriesProfile&) = default;

 private:
  std::vector<double> coefficients_;
};

/// One arc of a piecewise profile: h = a cos t + b sin t + sign on [lo, hi].
struct TrigPiece {
  double lo = 0;
  double hi = 0;
  double a = 0;
  double b = 0;
  double sign = 1;

  double value(double t) const noexcept;
  double slope(double t) const noexcept;
};

/// Profile with |h + h''| = 1, switching sign at each breakpoint in (0, pi/2).
///
/// Piece coefficients follow from h(0) = 0 and C1 continuity at every
/// breakpoint. The condition h'(pi/2) = 0 is not forced; it holds exactly when
/// the alternating cosine sum of the breakpoints equals 1/2 (see
/// closure_residual). Construction never fails on geometric grounds so that
/// validate() can report what is wrong.
class PiecewiseTrigProfile {
 public:
  /// leading_sign must be +1 or -1 (the sign of h + h'' just right of 0).
  PiecewiseTrigProfile(std::vector<double> breakpoints, int leading_sign = 1,
                       double vertical_offset = 0.0);

  /// Builds breakpoints from their cosines, tau_i = arccos(c_i).
  static PiecewiseTrigProfile from_cosines(std::span<const double> cosines, int leading_sign = 1,
                                           double vertical_offset = 0.0);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::size_t breakpoint_count() const noexcept { return breakpoints_.size(); }
  int leading_sign() const noexcept { return leading_sign_; }
  double vertical_offset() const noexcept { return vertical_offset_; }

  /// k + 1 pieces covering [0, pi/2].
  std::span<const TrigPiece> pieces() const noexcept { return pieces_; }

  /// sum_i (-1)^(i-1) cos tau_i - 1/2.
  double closure_residual() const noexcept;

  /// The profile -h (same breakpoints, opposite signs and offset).
  PiecewiseTrigProfile negated() const;

  /// Evaluation on [0, pi/2]. At a breakpoint, right_limit selects which
  /// adjacent piece supplies h''.
  Jet eval_fundamental(double t, bool right_limit = true) const noexcept;

  friend bool operator==(const PiecewiseTrigProfile& a, const PiecewiseTrigProfile& b) {
    return a.breakpoints_ == b.breakpoints_ && a.leading_sign_ == b.leading_sign_ &&
           a.vertical_offset_ == b.vertical_offset_;
  }

 private:
  std::vector<double> breakpoints_;
  int leading_sign_;
  double vertical_offset_;
  std::vector<TrigPiece> pieces_;
};

/// An element of the profile space in one of its two analytic representations.
class Profile {
 public:
  using Representation = std::variant<SineSeriesProfile, PiecewiseTrigProfile>;

  Profile(SineSeriesProfile p) : rep_(std::move(p)) {}       // NOLINT(google-explicit-constructor)
  Profile(PiecewiseTrigProfile p) : rep_(std::move(p)) {}    // NOLINT(google-explicit-constructor)

  const Representation& representation() const noexcept { return rep_; }
  bool is_piecewise() const noexcept { return std::holds_alternative<PiecewiseTrigProfile>(rep_); }
  const PiecewiseTrigProfile* as_piecewise() const noexcept {
    return std::get_if<PiecewiseTrigProfile>(&rep_);
  }
  const SineSeriesProfile* as_sine_series() const noexcept {
    return std::get_if<SineSeriesProfile>(&rep_);
  }

  /// Extension to the whole circle through h(t + pi) = -h(t) and h(pi - t) = h(t).
  /// At a breakpoint, h'' is the right limit (in increasing t).
  Jet eval(double t) const noexcept;

  /// Points in [0, pi/2] where h'' may jump (empty for sine series).
  std::vector<double> singular_points() const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  Representation rep_;
};

/// Smallest half-width w for which h + w is a convex support function.
double w0(const Profile& profile);

struct Violation {
  std::string constraint;
  double residual = 0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  std::string summary() const;
};

/// Checks membership in the profile space; never throws.
ValidationReport validate(const Profile& profile);

/// c sin t: the profile of a round ball.
Profile make_ball(double c);

/// A profile paired with a half-width w >= w0(h); the body has constant width 2w.
class Body {
 public:
  /// Throws ValidationError if the profile is invalid, w is not positive, or w < w0 - tol.
  Body(Profile profile, double half_width);

  const Profile& profile() const noexcept { return profile_; }
  double half_width() const noexcept { return half_width_; }
  double width() const noexcept { return 2 * half_width_; }
  /// w0 of the profile, computed once at construction.
  double critical_half_width() const noexcept { return w0_; }

 private:
  Profile profile_;
  double half_width_;
  double w0_;
};

}  // namespace cwrev
