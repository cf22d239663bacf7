#pragma once

#include "bjj/model.hpp"
#include "bjj/spectral.hpp"

#include <vector>

namespace bjj {

/// Reduced density averaged over an exponentially distributed observation
/// time with rate s: <p_n> = integral_0^inf p_n(t) s e^{-st} dt.
struct AveragedDensity {
  std::vector<double> p;
  double s = 1.0;
};

/// Closed-form pair sum over eigenstates,
///   <p_n> = sum_{j,j'} c_n(j,j') s^2 / (s^2 + (E_j - E_j')^2),
///   c_n(j,j') = V[n,j] w[j] V[n,j'] w[j'].
/// The imaginary part of 1/(1 + i dE/s) cancels between (j,j') and (j',j).
AveragedDensity averaged_reduced_density(const Spectrum& spec, double s,
                                         double trace_tol = 1e-10);

/// build -> diagonalize -> average -> Renyi entropy, in bits.
double averaged_entropy(const ModelParams& params);

enum class LogBase { natural, two };

/// xi_n = log <p_n>. Entries with <p_n> below kXiClampThreshold are replaced by
/// the floor log(kXiClampThreshold) and flagged in `clamped`.
struct EntanglementSpectrumResult {
  std::vector<double> xi;
  std::vector<bool> clamped;
  LogBase base = LogBase::natural;

  /// max xi - min xi over unclamped levels.
  double level_spread() const;
};

inline constexpr double kXiClampThreshold = 1e-300;

EntanglementSpectrumResult entanglement_spectrum(const AveragedDensity& avg,
                                                 LogBase base = LogBase::natural);
EntanglementSpectrumResult entanglement_spectrum(const ModelParams& params,
                                                 LogBase base = LogBase::natural);

}  // namespace bjj
