#pragma once

// Brute-force references for the test suite. Nothing in the production path
// calls into this module.

#include "bjj/dynamics.hpp"
#include "bjj/model.hpp"
#include "bjj/timeavg.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bjj::oracle {

struct IntegratorConfig {
  static constexpr int order = 4;
  double dt = 1e-3;

  void validate() const;

  /// Step size whose accumulated RK4 phase error, T * (w h)^4 * w / 120 with w
  /// the spread of the shifted Hamiltonian, stays below `tol` up to t_end.
  static IntegratorConfig for_accuracy(const ModelParams& params, double t_end, double tol);
};

struct IntegrationTrace {
  std::vector<ReducedDensityDiagonal> samples;  ///< one per requested time
  double max_norm_drift = 0.0;                  ///< max | ||psi||^2 - 1 | seen at the samples
};

/// Classic RK4 on i dpsi/dt = H psi from psi(0) = |0,N>, with H assembled
/// densely from the spin representation. p_n = |psi_n|^2 at each of the
/// ascending `times`. Throws NumericError if the norm drifts by more than 1e-6.
IntegrationTrace integrate_states(const ModelParams& params, std::span<const double> times,
                                  const IntegratorConfig& cfg);

ReducedDensityDiagonal integrate_state(const ModelParams& params, double t_end,
                                       const IntegratorConfig& cfg);

struct QuadratureResult {
  AveragedDensity average;
  double error_estimate = 0.0;  ///< summed Gauss-Kronrod error bound, max over n
  double tail_bound = 0.0;      ///< e^{-sT}, the weight beyond the truncation point
  std::size_t intervals = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integral of p_n(t) s e^{-st} over [0, T],
/// with p_n(t) taken from the spectral evaluation. Needs T >= 40/s.
/// Throws NumericError if `abs_tol` is not reached within `max_intervals`.
QuadratureResult quadrature_average(const ModelParams& params, double s, double T,
                                    double abs_tol = 1e-10, std::size_t max_intervals = 400000);

}  // namespace bjj::oracle
