#include "bjj/timeavg.hpp"

#include "bjj/dynamics.hpp"
#include "bjj/errors.hpp"
#include "bjj/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bjj {

AveragedDensity averaged_reduced_density(const Spectrum& spec, double s, double trace_tol) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw ParameterError("s", "averaging rate s must be > 0 (got " + std::to_string(s) + ")");

  const std::size_t n = spec.dim();
  const double s2 = s * s;

  // Lorentzian kernel for j < j', stored at (j', j) so the inner loop below
  // reads a contiguous column.
  Eigen::MatrixXd kernel(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t jp = j + 1; jp < n; ++jp) {
      const double gap = spec.energies[j] - spec.energies[jp];
      kernel(jp, j) = s2 / (s2 + gap * gap);
    }

  AveragedDensity out;
  out.s = s;
  out.p.resize(n);
  std::vector<double> b(n);
  CompensatedSum trace;
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t j = 0; j < n; ++j) b[j] = spec.eigvecs(row, j) * spec.overlaps[j];
    CompensatedSum diag, off;
    for (std::size_t j = 0; j < n; ++j) {
      diag += b[j] * b[j];
      CompensatedSum inner;
      for (std::size_t jp = j + 1; jp < n; ++jp) inner += kernel(jp, j) * b[jp];
      off += b[j] * inner.value();
    }
    const double value = diag.value() + 2.0 * off.value();
    if (value < -trace_tol)
      throw NumericError("averaged density element " + std::to_string(row) + " is negative (" +
                             std::to_string(value) + ")",
                         -value);
    trace += value;
    out.p[row] = std::clamp(value, 0.0, 1.0);
  }
  if (std::abs(trace.value() - 1.0) > trace_tol)
    throw NumericError("averaged density lost normalization: sum=" + std::to_string(trace.value()),
                       std::abs(trace.value() - 1.0));
  return out;
}

double averaged_entropy(const ModelParams& params) {
  params.validate();
  const Spectrum spec = diagonalize(build_hamiltonian(params), params.eig_tol);
  const AveragedDensity avg = averaged_reduced_density(spec, params.s, params.trace_tol);
  return renyi_entropy(avg.p, params.alpha);
}

double EntanglementSpectrumResult::level_spread() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t n = 0; n < xi.size(); ++n) {
    if (clamped[n]) continue;
    lo = std::min(lo, xi[n]);
    hi = std::max(hi, xi[n]);
  }
  return hi >= lo ? hi - lo : 0.0;
}

EntanglementSpectrumResult entanglement_spectrum(const AveragedDensity& avg, LogBase base) {
  const auto log_b = [base](double x) { return base == LogBase::two ? std::log2(x) : std::log(x); };
  EntanglementSpectrumResult out;
  out.base = base;
  out.xi.resize(avg.p.size());
  out.clamped.resize(avg.p.size());
  for (std::size_t n = 0; n < avg.p.size(); ++n) {
    const bool low = avg.p[n] < kXiClampThreshold;
    out.clamped[n] = low;
    out.xi[n] = log_b(low ? kXiClampThreshold : avg.p[n]);
  }
  return out;
}

EntanglementSpectrumResult entanglement_spectrum(const ModelParams& params, LogBase base) {
  params.validate();
  const Spectrum spec = diagonalize(build_hamiltonian(params), params.eig_tol);
  return entanglement_spectrum(averaged_reduced_density(spec, params.s, params.trace_tol), base);
}

}  // namespace bjj
