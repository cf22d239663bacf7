#include "bjj/numeric.hpp"

#include "bjj/errors.hpp"

#include <string>

namespace bjj {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw ParameterError("steps", "linspace needs at least 2 points");
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::vector<double> time_grid(double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ParameterError("dt", "dt must be > 0 (got " + std::to_string(dt) + ")");
  if (!(t_max >= 0.0) || !std::isfinite(t_max))
    throw ParameterError("tmax", "tmax must be >= 0 (got " + std::to_string(t_max) + ")");
  // The small slack keeps t_max = k*dt from losing its last row to rounding.
  const auto rows = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9)) + 1;
  std::vector<double> t(rows);
  for (std::size_t i = 0; i < rows; ++i) t[i] = dt * static_cast<double>(i);
  return t;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw FitError("line fit needs at least two (x, y) pairs of equal length");
  const double n = static_cast<double>(x.size());
  CompensatedSum sx, sy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx.value() / n, my = sy.value() / n;
  CompensatedSum sxx, sxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx.value() == 0.0) throw FitError("line fit: all abscissae are equal");
  LineFit fit;
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  CompensatedSum ss;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss.value() / n);
  return fit;
}

}  // namespace bjj
