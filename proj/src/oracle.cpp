#include "bjj/oracle.hpp"

#include "bjj/errors.hpp"
#include "bjj/numeric.hpp"
#include "bjj/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

namespace bjj::oracle {

namespace {

constexpr double kMaxNormDrift = 1e-6;

// Spin-form Hamiltonian minus the centre of its Gershgorin interval. The shift
// only changes a global phase, and it keeps w*h small for the RK4 stepper.
Eigen::MatrixXd shifted_spin_hamiltonian(const ModelParams& params, double* spread) {
  Eigen::MatrixXd h = build_spin_hamiltonian(params);
  const Eigen::Index n = h.rows();
  double lo = h(0, 0), hi = h(0, 0);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double radius = h.row(k).cwiseAbs().sum() - std::abs(h(k, k));
    lo = std::min(lo, h(k, k) - radius);
    hi = std::max(hi, h(k, k) + radius);
  }
  h.diagonal().array() -= 0.5 * (lo + hi);
  if (spread) *spread = 0.5 * (hi - lo);
  return h;
}

// Gauss-Kronrod 15-point nodes on [-1, 1] (non-negative half) and weights;
// the embedded 7-point Gauss rule uses the odd-indexed nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0, b = 0.0;
  std::vector<double> value;  // Kronrod estimate per element
  double error = 0.0;         // max over elements of |K15 - G7|
  bool operator<(const Panel& other) const { return error < other.error; }
};

class PanelRule {
 public:
  PanelRule(const DensityEvaluator& eval, double s) : eval_(eval), s_(s) {}

  Panel integrate(double a, double b) const {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::array<double, 15> t{};
    for (int i = 0; i < 7; ++i) {
      t[i] = mid - half * kNodes[i];
      t[14 - i] = mid + half * kNodes[i];
    }
    t[7] = mid;

    const std::size_t n = eval_.dim();
    std::vector<double> kronrod(n, 0.0), gauss(n, 0.0);
    eval_.for_each(t, [&](std::size_t i, std::span<const double> p) {
      const std::size_t node = i <= 7 ? i : 14 - i;
      const double weight = s_ * std::exp(-s_ * t[i]);
      const bool in_gauss = node % 2 == 1;
      for (std::size_t k = 0; k < n; ++k) {
        const double f = p[k] * weight;
        kronrod[k] += kKronrod[node] * f;
        if (in_gauss) gauss[k] += kGauss[node / 2] * f;
      }
    });

    Panel panel{a, b, std::move(kronrod), 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      panel.value[k] *= half;
      panel.error = std::max(panel.error, std::abs(panel.value[k] - half * gauss[k]));
    }
    return panel;
  }

 private:
  const DensityEvaluator& eval_;
  double s_;
};

}  // namespace

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ParameterError("dt", "integrator step must be > 0 (got " + std::to_string(dt) + ")");
}

IntegratorConfig IntegratorConfig::for_accuracy(const ModelParams& params, double t_end,
                                                double tol) {
  double spread = 0.0;
  shifted_spin_hamiltonian(params, &spread);
  IntegratorConfig cfg;
  if (spread > 0.0 && t_end > 0.0) {
    const double h = std::pow(120.0 * tol / (t_end * std::pow(spread, 5)), 0.25);
    cfg.dt = std::min(cfg.dt, h);
  }
  return cfg;
}

IntegrationTrace integrate_states(const ModelParams& params, std::span<const double> times,
                                  const IntegratorConfig& cfg) {
  params.validate();
  cfg.validate();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw ParameterError("t_end", "sample times must be >= 0");
    if (i > 0 && times[i] < times[i - 1])
      throw ParameterError("t_end", "sample times must be ascending");
  }

  const Eigen::MatrixXd h = shifted_spin_hamiltonian(params, nullptr);
  const Eigen::Index n = h.rows();

  // Columns hold Re(psi) and Im(psi):  d/dt [re, im] = [H im, -H re].
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(n, 2);
  psi(0, 0) = 1.0;
  Eigen::MatrixXd k1(n, 2), k2(n, 2), k3(n, 2), k4(n, 2), hx(n, 2);
  auto deriv = [&](const Eigen::MatrixXd& x, Eigen::MatrixXd& out) {
    hx.noalias() = h * x;
    out.col(0) = hx.col(1);
    out.col(1) = -hx.col(0);
  };
  auto step = [&](double dt) {
    deriv(psi, k1);
    deriv(psi + 0.5 * dt * k1, k2);
    deriv(psi + 0.5 * dt * k2, k3);
    deriv(psi + dt * k3, k4);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  IntegrationTrace trace;
  double t = 0.0;
  for (double target : times) {
    // Whole steps of cfg.dt, then one short step landing exactly on target.
    const double span_left = target - t;
    const auto whole = static_cast<long long>(std::floor(span_left / cfg.dt));
    for (long long i = 0; i < whole; ++i) step(cfg.dt);
    const double rest = span_left - static_cast<double>(whole) * cfg.dt;
    if (rest > 0.0) step(rest);
    t = target;

    ReducedDensityDiagonal sample;
    sample.t = target;
    sample.p.resize(static_cast<std::size_t>(n));
    double norm = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      sample.p[k] = psi(k, 0) * psi(k, 0) + psi(k, 1) * psi(k, 1);
      norm += sample.p[k];
    }
    const double drift = std::abs(norm - 1.0);
    trace.max_norm_drift = std::max(trace.max_norm_drift, drift);
    if (!(drift <= kMaxNormDrift))
      throw NumericError("RK4 norm drift " + std::to_string(drift) + " at t=" +
                             std::to_string(target) + "; reduce the step size",
                         drift);
    trace.samples.push_back(std::move(sample));
  }
  return trace;
}

ReducedDensityDiagonal integrate_state(const ModelParams& params, double t_end,
                                       const IntegratorConfig& cfg) {
  const double times[1] = {t_end};
  return std::move(integrate_states(params, times, cfg).samples.front());
}

QuadratureResult quadrature_average(const ModelParams& params, double s, double T,
                                    double abs_tol, std::size_t max_intervals) {
  params.validate();
  if (!(s > 0.0)) throw ParameterError("s", "averaging rate s must be > 0");
  if (!(T >= 40.0 / s))
    throw ParameterError("T", "quadrature cutoff T must be >= 40/s (got " + std::to_string(T) + ")");

  const Spectrum spec = diagonalize(build_hamiltonian(params), params.eig_tol);
  const DensityEvaluator eval(spec, 1e-8);
  const PanelRule rule(eval, s);

  // Initial panels resolve the fastest Bohr frequency to a few panels per period.
  const double omega = bohr_frequencies(spec).max();
  const double width = omega > 0.0 ? std::min(1.0, std::numbers::pi / omega) : T;
  const auto initial = static_cast<std::size_t>(std::ceil(T / width));

  std::priority_queue<Panel> queue;
  double total_error = 0.0;
  for (std::size_t i = 0; i < initial; ++i) {
    const double a = T * static_cast<double>(i) / static_cast<double>(initial);
    const double b = i + 1 == initial ? T : T * static_cast<double>(i + 1) / static_cast<double>(initial);
    Panel p = rule.integrate(a, b);
    total_error += p.error;
    queue.push(std::move(p));
  }
  while (total_error > abs_tol) {
    if (queue.size() >= max_intervals)
      throw NumericError("quadrature did not reach tolerance " + std::to_string(abs_tol) + " within " +
                             std::to_string(max_intervals) + " panels",
                         total_error);
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = rule.integrate(worst.a, mid);
    Panel right = rule.integrate(mid, worst.b);
    total_error += left.error + right.error - worst.error;
    queue.push(std::move(left));
    queue.push(std::move(right));
  }

  QuadratureResult out;
  out.intervals = queue.size();
  out.error_estimate = total_error;
  out.tail_bound = std::exp(-s * T);
  out.average.s = s;
  std::vector<CompensatedSum> sums(spec.dim());
  while (!queue.empty()) {
    const Panel& p = queue.top();
    for (std::size_t k = 0; k < sums.size(); ++k) sums[k] += p.value[k];
    queue.pop();
  }
  for (const auto& sum : sums) out.average.p.push_back(sum.value());
  return out;
}

}  // namespace bjj::oracle
