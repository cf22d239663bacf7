#include "bjj/scans.hpp"

#include "bjj/dynamics.hpp"
#include "bjj/errors.hpp"
#include "bjj/executor.hpp"
#include "bjj/spectral.hpp"
#include "bjj/timeavg.hpp"
#include "bjj/version.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <sstream>

namespace bjj {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void require_increasing(const std::vector<double>& values, const char* field) {
  if (values.empty()) throw ParameterError(field, std::string(field) + ": no scan points");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1]))
      throw ParameterError(field, std::string(field) + ": scan axis must be strictly increasing");
}

// Averaged entropy at every point. A failure is rethrown with the same error
// category, prefixed with the failing point.
std::vector<double> evaluate_points(const std::vector<ModelParams>& points,
                                    const std::vector<std::string>& labels, unsigned workers) {
  std::vector<double> out(points.size());
  parallel_for(points.size(), workers, [&](std::size_t i) {
    const std::string where = "scan point " + labels[i] + ": ";
    try {
      out[i] = averaged_entropy(points[i]);
    } catch (const ParameterError& e) {
      throw ParameterError(e.field(), where + e.what());
    } catch (const BracketError& e) {
      throw BracketError(where + e.what(), e.worst_residual());
    } catch (const FitError& e) {
      throw FitError(where + e.what(), e.worst_residual());
    } catch (const NumericError& e) {
      throw NumericError(where + e.what(), e.worst_residual());
    }
  });
  return out;
}

double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
  const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
  if (!(a < 0.0)) return x1;  // flat top
  return std::clamp(-b / (2.0 * a), x0, x2);
}

std::vector<double> all_integers(int lo, int hi) {
  std::vector<double> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

}  // namespace

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::J: return "J";
    case Axis::U: return "U";
    case Axis::N: return "N";
    case Axis::u: return "u";
  }
  return "?";
}

Axis parse_axis(std::string_view name) {
  if (name == "J") return Axis::J;
  if (name == "U") return Axis::U;
  if (name == "N") return Axis::N;
  if (name == "u") return Axis::u;
  throw ParameterError("vary", "unknown scan axis '" + std::string(name) + "' (expected J, U, N or u)");
}

std::string_view to_string(CriticalMethod method) {
  return method == CriticalMethod::knee ? "knee" : "argmax-quadratic";
}

std::string_view to_string(ScalingModel model) {
  return model == ScalingModel::linear ? "linear" : "log";
}

Provenance make_provenance() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return {kToolVersion, buf};
}

ModelParams params_at(Axis axis, double value, const ModelParams& fixed, UConvention convention) {
  ModelParams p = fixed;
  switch (axis) {
    case Axis::J: p.J = value; break;
    case Axis::U: p.U = value; break;
    case Axis::N:
      if (value != std::round(value) || value < 1)
        throw ParameterError("N", "N must be a positive integer (got " + num(value) + ")");
      p.N = static_cast<int>(value);
      break;
    case Axis::u:
      if (!(value > 0.0)) throw ParameterError("u", "u must be > 0 (got " + num(value) + ")");
      if (convention == UConvention::fix_U) {
        if (!(fixed.U > 0.0)) throw ParameterError("U", "constant-u points at fixed U need U > 0");
        p.J = fixed.U * fixed.N / value;
      } else {
        p.U = value * fixed.J / fixed.N;
      }
      break;
  }
  p.validate();
  return p;
}

ScanResult scan_values(Axis vary, std::vector<double> values, const ModelParams& fixed,
                       const ScanOptions& opts) {
  require_increasing(values, "axis");
  std::vector<ModelParams> points;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string label = std::to_string(i) + " (" + std::string(to_string(vary)) + "=" + num(values[i]) + ")";
    try {
      points.push_back(params_at(vary, values[i], fixed, opts.convention));
    } catch (const ParameterError& e) {
      throw ParameterError(e.field(), "scan point " + label + ": " + e.what());
    }
    labels.push_back(label);
  }
  ScanResult out;
  out.axis_name = vary;
  out.S = evaluate_points(points, labels, opts.workers);
  out.axis = std::move(values);
  out.fixed = fixed;
  out.provenance = make_provenance();
  return out;
}

ScanResult scan_1d(Axis vary, double lo, double hi, int steps, const ModelParams& fixed,
                   const ScanOptions& opts) {
  if (steps < 2) throw ParameterError("steps", "a scan needs steps >= 2 (got " + std::to_string(steps) + ")");
  if (!(hi > lo)) throw ParameterError("max", "scan range needs max > min");
  std::vector<double> values = linspace(lo, hi, static_cast<std::size_t>(steps));
  if (vary == Axis::N)
    for (double& v : values) v = std::round(v);
  return scan_values(vary, std::move(values), fixed, opts);
}

ScanGrid scan_2d(Axis vary_x, std::vector<double> xs, Axis vary_y, std::vector<double> ys,
                 const ModelParams& fixed, const ScanOptions& opts) {
  if (vary_x == vary_y) throw ParameterError("vary2", "the two scan axes must differ");
  require_increasing(xs, "x");
  require_increasing(ys, "y");

  std::vector<ModelParams> points;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const std::string label = "(" + std::string(to_string(vary_x)) + "=" + num(xs[i]) + ", " +
                                std::string(to_string(vary_y)) + "=" + num(ys[j]) + ")";
      try {
        // y is applied on top of the x point, so e.g. (N, u) realizes u at that N.
        points.push_back(params_at(vary_y, ys[j], params_at(vary_x, xs[i], fixed, opts.convention),
                                   opts.convention));
      } catch (const ParameterError& e) {
        throw ParameterError(e.field(), "scan point " + label + ": " + e.what());
      }
      labels.push_back(label);
    }
  }
  ScanGrid out;
  out.x_axis = vary_x;
  out.y_axis = vary_y;
  out.S = evaluate_points(points, labels, opts.workers);
  out.x = std::move(xs);
  out.y = std::move(ys);
  out.fixed = fixed;
  out.provenance = make_provenance();
  return out;
}

NormalizedScan normalized_scan(double u, std::span<const int> n_values, const ModelParams& fixed,
                               const ScanOptions& opts) {
  if (!(u > 0.0)) throw ParameterError("u", "u must be > 0 (got " + num(u) + ")");
  std::vector<double> ns(n_values.begin(), n_values.end());
  require_increasing(ns, "N");

  std::vector<ModelParams> points;
  std::vector<std::string> labels;
  for (int n : n_values) {
    ModelParams at_n = fixed;
    at_n.N = n;
    points.push_back(params_at(Axis::u, u, at_n, opts.convention));
    labels.push_back("(N=" + std::to_string(n) + ", u=" + num(u) + ")");
  }

  NormalizedScan out;
  out.u = u;
  out.raw.axis_name = Axis::N;
  out.raw.S = evaluate_points(points, labels, opts.workers);
  out.raw.axis = std::move(ns);
  out.raw.fixed = fixed;
  out.raw.provenance = make_provenance();

  const double peak = *std::max_element(out.raw.S.begin(), out.raw.S.end());
  if (!(peak > 0.0)) throw FitError("normalized scan: entropy vanishes at every N");
  out.normalized.resize(out.raw.S.size());
  for (std::size_t i = 0; i < out.raw.S.size(); ++i) out.normalized[i] = out.raw.S[i] / peak;
  return out;
}

CriticalEstimate locate_critical_argmax(const ModelParams& fixed, int n_min, int n_max,
                                        const ScanOptions& opts) {
  if (n_min < 1 || n_max <= n_min)
    throw ParameterError("nmin", "argmax scan needs 1 <= nmin < nmax");
  if (!(fixed.J > 0.0)) throw ParameterError("J", "argmax scan needs J > 0");

  const std::vector<double> ns = all_integers(n_min, n_max);
  std::vector<double> us;
  for (double n : ns) us.push_back(fixed.U * n / fixed.J);

  const auto in_window = std::count_if(us.begin(), us.end(), [](double u) { return u >= 2.0 && u <= 6.0; });
  if (us.front() > 2.0 || us.back() < 6.0 || in_window < 15)
    throw ParameterError("u_range", "argmax scan must cover u in [2, 6] with at least 15 points (covers [" +
                                        num(us.front()) + ", " + num(us.back()) + "] with " +
                                        std::to_string(in_window) + " points inside)");

  CriticalEstimate est;
  est.method = CriticalMethod::argmax_quadratic;
  est.curve = scan_values(Axis::N, ns, fixed, opts);
  est.u_axis = us;

  const auto& S = est.curve.S;
  const auto best = static_cast<std::size_t>(std::max_element(S.begin(), S.end()) - S.begin());
  if (best == 0 || best + 1 == S.size())
    throw BracketError("entropy maximum at the scan boundary u=" + num(us[best]) +
                       "; widen the N range");
  est.u_c = parabola_vertex(us[best - 1], S[best - 1], us[best], S[best], us[best + 1], S[best + 1]);
  est.bracket = {us[best - 1], us[best + 1]};
  return est;
}

CriticalEstimate locate_critical_knee(const ModelParams& fixed, double j_min, double j_max,
                                      int steps, const ScanOptions& opts) {
  if (!(j_min > 0.0)) throw ParameterError("jmin", "knee scan needs jmin > 0");
  if (steps < 6) throw ParameterError("steps", "knee scan needs at least 6 points");

  CriticalEstimate est;
  est.method = CriticalMethod::knee;
  est.curve = scan_1d(Axis::J, j_min, j_max, steps, fixed, opts);
  const auto& J = est.curve.axis;
  const auto& S = est.curve.S;
  const std::size_t n = J.size();
  for (double j : J) est.u_axis.push_back(fixed.U * fixed.N / j);

  // Change point: line on [0, k), constant on [k, n).
  double best_cost = std::numeric_limits<double>::infinity();
  LineFit rise;
  double plateau = 0.0;
  for (std::size_t k = 3; k + 2 <= n; ++k) {
    const LineFit left = fit_line(std::span(J).first(k), std::span(S).first(k));
    CompensatedSum mean;
    for (std::size_t i = k; i < n; ++i) mean += S[i];
    const double c = mean.value() / static_cast<double>(n - k);
    CompensatedSum rss;
    for (std::size_t i = k; i < n; ++i) rss += (S[i] - c) * (S[i] - c);
    const double cost = left.rms * left.rms * static_cast<double>(k) + rss.value();
    if (cost < best_cost) {
      best_cost = cost;
      rise = left;
      plateau = c;
    }
  }
  if (!(rise.slope > 0.0)) throw FitError("knee fit: left segment does not rise with J");

  const double j_knee = (plateau - rise.intercept) / rise.slope;
  if (!(j_knee > J.front() && j_knee < J.back()))
    throw BracketError("knee at J=" + num(j_knee) + " lies outside the scanned range [" +
                       num(J.front()) + ", " + num(J.back()) + "]");
  auto hi_it = std::upper_bound(J.begin(), J.end(), j_knee);
  std::size_t hi = static_cast<std::size_t>(hi_it - J.begin());
  std::size_t lo = hi - 1;
  if (J[lo] == j_knee && lo > 0) --lo;

  est.j_knee = j_knee;
  est.u_c = fixed.U * fixed.N / j_knee;
  est.bracket = {fixed.U * fixed.N / J[hi], fixed.U * fixed.N / J[lo]};
  return est;
}

CriticalEstimate locate_critical(CriticalMethod method, const ModelParams& fixed, double u_lo,
                                 double u_hi, int steps, const ScanOptions& opts) {
  if (!(u_lo > 0.0) || !(u_hi > u_lo)) throw ParameterError("u_range", "u range needs 0 < u_lo < u_hi");
  if (method == CriticalMethod::argmax_quadratic) {
    if (!(fixed.U > 0.0) || !(fixed.J > 0.0)) throw ParameterError("U", "argmax mode needs U > 0 and J > 0");
    const int n_min = std::max(1, static_cast<int>(std::ceil(u_lo * fixed.J / fixed.U - 1e-9)));
    const int n_max = static_cast<int>(std::floor(u_hi * fixed.J / fixed.U + 1e-9));
    return locate_critical_argmax(fixed, n_min, n_max, opts);
  }
  const double un = fixed.U * fixed.N;
  if (!(un > 0.0)) throw ParameterError("U", "knee mode needs U > 0");
  return locate_critical_knee(fixed, un / u_hi, un / u_lo, steps, opts);
}

ScalingFit fit_scaling(std::span<const double> n_values, std::span<const double> normalized) {
  if (n_values.size() != normalized.size())
    throw ParameterError("N", "scaling fit: N and S~ lengths differ");
  if (n_values.size() < 5)
    throw ParameterError("N", "scaling fit needs at least 5 N values (got " + std::to_string(n_values.size()) + ")");
  const auto [lo, hi] = std::minmax_element(normalized.begin(), normalized.end());
  if (*hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi)))
    throw FitError("scaling fit: S~ is constant over N, both models fit trivially");

  std::vector<double> log_n;
  for (double n : n_values) {
    if (!(n > 0.0)) throw ParameterError("N", "scaling fit needs N > 0");
    log_n.push_back(std::log(n));
  }
  ScalingFit fit;
  fit.model_log = fit_line(log_n, normalized);
  fit.model_lin = fit_line(n_values, normalized);
  if (fit.model_log.rms == fit.model_lin.rms)
    throw FitError("scaling fit: log and linear models have identical rms");
  fit.preferred = fit.model_lin.rms < fit.model_log.rms ? ScalingModel::linear : ScalingModel::log;
  return fit;
}

ScalingFit fit_scaling(double u, std::span<const int> n_values, const ModelParams& fixed,
                       const ScanOptions& opts, NormalizedScan* scan_out) {
  if (n_values.size() < 5)
    throw ParameterError("N", "scaling fit needs at least 5 N values (got " + std::to_string(n_values.size()) + ")");
  NormalizedScan scan = normalized_scan(u, n_values, fixed, opts);
  ScalingFit fit = fit_scaling(scan.raw.axis, scan.normalized);
  if (scan_out) *scan_out = std::move(scan);
  return fit;
}

MaxElementTrace track_max_elements(const ModelParams& params, double t_max, double dt) {
  params.validate();
  if (!(t_max > 0.0)) throw ParameterError("tmax", "tmax must be > 0 (got " + num(t_max) + ")");
  const std::vector<double> grid = time_grid(t_max, dt);

  const Spectrum spec = diagonalize(build_hamiltonian(params), params.eig_tol);
  const DensityEvaluator eval(spec, params.trace_tol);

  MaxElementTrace trace;
  trace.t_max = t_max;
  trace.dt = dt;
  trace.per_n_max.assign(params.dim(), 0.0);
  eval.for_each(grid, [&](std::size_t, std::span<const double> p) {
    for (std::size_t n = 0; n < p.size(); ++n) trace.per_n_max[n] = std::max(trace.per_n_max[n], p[n]);
  });

  std::vector<std::size_t> order(params.dim());
  for (std::size_t n = 0; n < order.size(); ++n) order[n] = n;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return trace.per_n_max[a] > trace.per_n_max[b];
  });
  trace.first = {order[0], trace.per_n_max[order[0]]};
  trace.second = {order[1], trace.per_n_max[order[1]]};
  return trace;
}

double two_state_entropy(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw ParameterError("rho", "rho must lie in [0, 1] (got " + num(rho) + ")");
  const double s = -std::log2(rho * rho + (1.0 - rho) * (1.0 - rho));
  return s < 0.0 ? 0.0 : s;
}

}  // namespace bjj
