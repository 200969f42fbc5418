#include "frictionlab/fit.hpp"

#include <cmath>
#include <vector>

#include "frictionlab/errors.hpp"

namespace frictionlab {

RateFit fit_rate(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw PreconditionError("fit_rate: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw PreconditionError("fit_rate: at least two points are required");
  std::vector<double> lx(n), ly(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0))
      throw DomainError("fit_rate: log-log fit needs positive values");
    lx[k] = std::log(x[k]);
    ly[k] = std::log(y[k]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (sxx == 0.0) throw PreconditionError("fit_rate: all abscissae coincide");
  RateFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = ly[k] - (fit.intercept + fit.slope * lx[k]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  if (n > 2) fit.slope_stderr = std::sqrt(ss / static_cast<double>(n - 2) / sxx);
  return fit;
}

}  // namespace frictionlab
