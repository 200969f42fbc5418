#pragma once

#include <cstddef>
#include <span>

namespace frictionlab {

/// Least-squares line log(y) = intercept + slope * log(x) (natural logs).
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;      // RMS of the log-space residuals
  double slope_stderr = 0.0;  // zero for two points
  std::size_t points = 0;
};

/// Throws PreconditionError for fewer than two points or mismatched sizes,
/// DomainError for nonpositive x or y, and PreconditionError when all x
/// coincide.
RateFit fit_rate(std::span<const double> x, std::span<const double> y);

}  // namespace frictionlab
