#pragma once

#include "bjj/model.hpp"
#include "bjj/numeric.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bjj {

enum class Axis { J, U, N, u };

std::string_view to_string(Axis axis);
/// Accepts "J", "U", "N", "u". Throws ParameterError (field "vary") otherwise.
Axis parse_axis(std::string_view name);

/// How a point at fixed u = U N / J is realized.
enum class UConvention {
  fix_U,  ///< hold U, set J = U N / u
  fix_J,  ///< hold J, set U = u J / N
};

struct Provenance {
  std::string tool_version;
  std::string timestamp;  ///< ISO-8601 UTC, creation time of the record
};

Provenance make_provenance();

struct ScanOptions {
  unsigned workers = 1;
  UConvention convention = UConvention::fix_U;
};

/// Averaged entropy (bits) along one parameter axis.
struct ScanResult {
  Axis axis_name = Axis::J;
  std::vector<double> axis;  ///< strictly increasing
  std::vector<double> S;
  ModelParams fixed;
  Provenance provenance;
};

/// `fixed` with the axis parameter set to `value`.
ModelParams params_at(Axis axis, double value, const ModelParams& fixed,
                      UConvention convention = UConvention::fix_U);

/// Scan over explicit axis values (must be strictly increasing).
ScanResult scan_values(Axis vary, std::vector<double> values, const ModelParams& fixed,
                       const ScanOptions& opts = {});

/// `steps` evenly spaced points over [lo, hi]; N-axis points are rounded to integers.
ScanResult scan_1d(Axis vary, double lo, double hi, int steps, const ModelParams& fixed,
                   const ScanOptions& opts = {});

/// Row-major grid: S[i * y.size() + j] belongs to (x[i], y[j]).
struct ScanGrid {
  Axis x_axis = Axis::J;
  Axis y_axis = Axis::U;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> S;
  ModelParams fixed;
  Provenance provenance;

  double at(std::size_t i, std::size_t j) const { return S[i * y.size() + j]; }
};

ScanGrid scan_2d(Axis vary_x, std::vector<double> xs, Axis vary_y, std::vector<double> ys,
                 const ModelParams& fixed, const ScanOptions& opts = {});

/// Averaged entropy along N at constant u, divided by its maximum over the scan.
struct NormalizedScan {
  double u = 0.0;
  ScanResult raw;                  ///< axis N
  std::vector<double> normalized;  ///< S / max S
};

NormalizedScan normalized_scan(double u, std::span<const int> n_values, const ModelParams& fixed,
                               const ScanOptions& opts = {});

enum class CriticalMethod { argmax_quadratic, knee };

std::string_view to_string(CriticalMethod method);

struct CriticalEstimate {
  double u_c = 0.0;
  CriticalMethod method = CriticalMethod::argmax_quadratic;
  std::pair<double, double> bracket;  ///< u_lo < u_c < u_hi
  ScanResult curve;                   ///< axis N (argmax) or J (knee)
  std::vector<double> u_axis;         ///< u at each curve point
  std::optional<double> j_knee;       ///< knee only
};

/// Scans every integer N in [n_min, n_max] at fixed (U, J), takes the grid
/// maximum of S against u and refines it with a parabola through the three
/// points around it. The grid must cover u in [2, 6] with >= 15 points there.
/// Throws BracketError if the maximum sits on the scan boundary.
CriticalEstimate locate_critical_argmax(const ModelParams& fixed, int n_min, int n_max,
                                        const ScanOptions& opts = {});

/// Scans J over [j_min, j_max] at fixed (U, N) and fits a rising line to the
/// left segment and a constant to the right one, choosing the split with the
/// smallest combined residual. u_c = U N / J_knee at the intersection.
CriticalEstimate locate_critical_knee(const ModelParams& fixed, double j_min, double j_max,
                                      int steps, const ScanOptions& opts = {});

/// Either method over a u-range: argmax takes every integer N with
/// u_lo <= U N / J <= u_hi (steps unused); knee takes `steps` J values
/// spanning U N / u_hi .. U N / u_lo.
CriticalEstimate locate_critical(CriticalMethod method, const ModelParams& fixed, double u_lo,
                                 double u_hi, int steps, const ScanOptions& opts = {});

inline constexpr double kMeanFieldCriticalU = 4.0;

enum class ScalingModel { log, linear };

std::string_view to_string(ScalingModel model);

struct ScalingFit {
  LineFit model_log;  ///< S~ = a + b log N
  LineFit model_lin;  ///< S~ = a + b N
  ScalingModel preferred = ScalingModel::log;
};

/// Fits both models to given data; needs >= 5 points and non-constant S~.
ScalingFit fit_scaling(std::span<const double> n_values, std::span<const double> normalized);

/// normalized_scan followed by fit_scaling.
ScalingFit fit_scaling(double u, std::span<const int> n_values, const ModelParams& fixed,
                       const ScanOptions& opts = {}, NormalizedScan* scan_out = nullptr);

struct DominantElement {
  std::size_t index = 0;
  double value = 0.0;
};

/// Per-element maxima of p_n(t) over the grid 0, dt, ..., t_max.
struct MaxElementTrace {
  std::vector<double> per_n_max;
  double t_max = 0.0;
  double dt = 0.0;
  DominantElement first;
  DominantElement second;
};

MaxElementTrace track_max_elements(const ModelParams& params, double t_max, double dt);

/// -log2(rho^2 + (1 - rho)^2): Renyi-2 entropy of a state spread over two Fock states.
double two_state_entropy(double rho);

}  // namespace bjj
