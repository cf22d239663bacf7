#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace bjj {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// `count` evenly spaced points from `lo` to `hi` inclusive; endpoints are exact.
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Times 0, dt, 2dt, ... with floor(t_max/dt)+1 entries.
std::vector<double> time_grid(double t_max, double dt);

/// Ordinary least-squares line y = intercept + slope * x.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms = 0.0;  ///< root-mean-square residual
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace bjj
