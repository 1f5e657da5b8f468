#pragma once

#include <stdexcept>
#include <string>

namespace disclination {

/// A caller violated an operation's precondition (bad input shape, not a
/// numerical failure).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation requested inside the ball around the origin where the
/// spherically symmetric fields are singular.
class OriginExclusionError : public std::domain_error {
 public:
  OriginExclusionError(double radius, double r_min)
      : std::domain_error("point at radius " + std::to_string(radius) +
                          " lies inside the origin-exclusion ball (r_min = " +
                          std::to_string(r_min) + ")"),
        radius_(radius),
        r_min_(r_min) {}

  double radius() const noexcept { return radius_; }
  double r_min() const noexcept { return r_min_; }

 private:
  double radius_;
  double r_min_;
};

/// Evaluation requested on the nonpositive 3-axis, where the spherical frame
/// used by the hedgehog construction degenerates.
class AxisExclusionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Transport integration did not reach the requested tolerance.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double best_estimate, long steps)
      : std::runtime_error(what), best_estimate_(best_estimate), steps_(steps) {}

  double best_estimate() const noexcept { return best_estimate_; }
  long steps() const noexcept { return steps_; }

 private:
  double best_estimate_;
  long steps_;
};

}  // namespace disclination
