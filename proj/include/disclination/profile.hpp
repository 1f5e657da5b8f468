#pragma once
// Radial profile functions. A ProfileFunction is the single free function
// f(r) of the flat spherically symmetric connection family, together with
// its analytic derivative and the declared limits f(0) and f(infinity).

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>

#include "disclination/errors.hpp"

namespace disclination {

inline constexpr double kFarRadius = 50.0;
inline constexpr double kTailTol = 1e-6;
inline constexpr double kDerivativeTol = 1e-6;

using ScalarFn = std::function<double(double)>;

/// Central-difference step used when no analytic derivative is available.
inline double fallback_step(double r) { return 1e-6 * std::max(1.0, std::fabs(r)); }

/// A scalar function of the radius with an optional analytic derivative.
struct RadialFunction {
  ScalarFn value;
  ScalarFn derivative;  // may be empty

  double operator()(double r) const { return value(r); }

  bool has_analytic_derivative() const { return static_cast<bool>(derivative); }

  double deriv(double r) const {
    if (derivative) return derivative(r);
    const double h = fallback_step(r);
    return (value(r + h) - value(r - h)) / (2.0 * h);
  }

  static RadialFunction constant(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; }};
  }
};

class ProfileFunction {
 public:
  /// `deriv` may be empty; the derivative then falls back to central
  /// differences and approximate_derivative() reports true.
  ProfileFunction(std::string label, ScalarFn eval, ScalarFn deriv, double f_at_zero,
                  double f_at_infinity)
      : label_(std::move(label)),
        eval_(std::move(eval)),
        deriv_(std::move(deriv)),
        f_at_zero_(f_at_zero),
        f_at_infinity_(f_at_infinity) {
    if (!eval_) throw PreconditionError("profile '" + label_ + "' has no evaluator");
  }

  double eval(double r) const { return eval_(r); }
  double operator()(double r) const { return eval_(r); }

  double deriv(double r) const {
    if (deriv_) return deriv_(r);
    const double h = fallback_step(r);
    return (eval_(r + h) - eval_(r - h)) / (2.0 * h);
  }

  double f_at_zero() const { return f_at_zero_; }
  double f_at_infinity() const { return f_at_infinity_; }
  const std::string& label() const { return label_; }
  bool approximate_derivative() const { return !deriv_; }

  RadialFunction as_radial() const {
    return {eval_, deriv_ ? deriv_ : ScalarFn([p = *this](double r) { return p.deriv(r); })};
  }

  /// r -> -f(r), with negated limits.
  ProfileFunction negated() const {
    ScalarFn d;
    if (deriv_) d = [g = deriv_](double r) { return -g(r); };
    return {"-(" + label_ + ")", [g = eval_](double r) { return -g(r); }, std::move(d),
            -f_at_zero_, -f_at_infinity_};
  }

  static ProfileFunction zero() {
    return {"zero", [](double) { return 0.0; }, [](double) { return 0.0; }, 0.0, 0.0};
  }

  /// amplitude * exp(-rate r). exp_decay(pi/2, 1) is the standard example
  /// with an essential singularity at the origin.
  static ProfileFunction exp_decay(double amplitude, double rate) {
    return {"exp_decay(" + std::to_string(amplitude) + "," + std::to_string(rate) + ")",
            [=](double r) { return amplitude * std::exp(-rate * r); },
            [=](double r) { return -rate * amplitude * std::exp(-rate * r); }, amplitude,
            0.0};
  }

  /// amplitude * exp(-rate r^2)
  static ProfileFunction gaussian(double amplitude, double rate) {
    return {"gauss(" + std::to_string(amplitude) + "," + std::to_string(rate) + ")",
            [=](double r) { return amplitude * std::exp(-rate * r * r); },
            [=](double r) { return -2.0 * rate * r * amplitude * std::exp(-rate * r * r); },
            amplitude, 0.0};
  }

  /// amplitude / (1 + r / scale)
  static ProfileFunction rational(double amplitude, double scale) {
    return {"rational(" + std::to_string(amplitude) + "," + std::to_string(scale) + ")",
            [=](double r) { return amplitude / (1.0 + r / scale); },
            [=](double r) {
              const double d = 1.0 + r / scale;
              return -amplitude / (scale * d * d);
            },
            amplitude, 0.0};
  }

 private:
  std::string label_;
  ScalarFn eval_;
  ScalarFn deriv_;
  double f_at_zero_;
  double f_at_infinity_;
};

struct ProfileCheck {
  bool finite = true;
  /// |f(R) - f_at_infinity| at the radius where the tail test was decided.
  double tail_residual = 0.0;
  double tail_radius = kFarRadius;
  bool tail_ok = true;
  /// max over sample radii of |FD - f'| / max(1, |f'|).
  double derivative_mismatch = 0.0;
  bool derivative_ok = true;

  bool ok() const { return finite && tail_ok && derivative_ok; }
};

/// Radii at which profile contracts are spot-checked.
inline constexpr std::array<double, 8> kProfileSampleRadii{0.1, 0.3, 0.7, 1.0,
                                                           2.0, 5.0, 10.0, 20.0};

/// Checks the declared f(infinity) and the analytic derivative.
///
/// The tail is tested at R = 50 first; slowly decaying profiles (e.g. 1/r)
/// are then retested at R = 50 * 10^k, k = 1..6, and accepted at the first
/// radius that meets the tolerance.
inline ProfileCheck check_profile(const ProfileFunction& f) {
  ProfileCheck out;
  for (double r : kProfileSampleRadii) {
    if (!std::isfinite(f.eval(r)) || !std::isfinite(f.deriv(r))) out.finite = false;
  }

  out.tail_ok = false;
  double radius = kFarRadius;
  for (int k = 0; k <= 6; ++k, radius *= 10.0) {
    out.tail_radius = radius;
    out.tail_residual = std::fabs(f.eval(radius) - f.f_at_infinity());
    if (out.tail_residual < kTailTol) {
      out.tail_ok = true;
      break;
    }
  }

  for (double r : kProfileSampleRadii) {
    const double h = 1e-5 * std::max(1.0, r);
    const double fd = (f.eval(r + h) - f.eval(r - h)) / (2.0 * h);
    const double d = f.deriv(r);
    out.derivative_mismatch =
        std::max(out.derivative_mismatch, std::fabs(fd - d) / std::max(1.0, std::fabs(d)));
  }
  out.derivative_ok = out.derivative_mismatch < kDerivativeTol;
  return out;
}

/// Throws PreconditionError when check_profile fails.
inline const ProfileFunction& require_valid(const ProfileFunction& f) {
  const ProfileCheck c = check_profile(f);
  if (!c.finite) throw PreconditionError("profile '" + f.label() + "' is not finite");
  if (!c.tail_ok)
    throw PreconditionError("profile '" + f.label() +
                            "' does not approach its declared f(infinity)");
  if (!c.derivative_ok)
    throw PreconditionError("profile '" + f.label() +
                            "' derivative disagrees with central differences");
  return f;
}

}  // namespace disclination
