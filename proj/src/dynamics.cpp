#include "bjj/dynamics.hpp"

#include "bjj/errors.hpp"
#include "bjj/numeric.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace bjj {

namespace {

constexpr std::size_t kBlock = 512;

}  // namespace

DensityEvaluator::DensityEvaluator(const Spectrum& spec, double trace_tol)
    : energies_(spec.energies), trace_tol_(trace_tol) {
  const auto n = static_cast<Eigen::Index>(spec.dim());
  weights_.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) weights_.col(j) = spec.eigvecs.col(j) * spec.overlaps[j];
}

void DensityEvaluator::evaluate_block(std::span<const double> times,
                                      Eigen::MatrixXd& probs) const {
  const auto n = static_cast<Eigen::Index>(dim());
  const auto m = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd cos_phase(n, m), sin_phase(n, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double t = times[i];
    for (Eigen::Index j = 0; j < n; ++j) {
      const double phase = energies_[j] * t;
      cos_phase(j, i) = std::cos(phase);
      sin_phase(j, i) = std::sin(phase);
    }
  }
  // exp(-iEt) = cos - i sin; only |A|^2 is needed so the sign of Im drops out.
  Eigen::MatrixXd re = weights_ * cos_phase;
  Eigen::MatrixXd im = weights_ * sin_phase;
  probs = re.cwiseAbs2() + im.cwiseAbs2();
  for (Eigen::Index i = 0; i < m; ++i) finish_column(probs.col(i).data(), times[i]);
}

void DensityEvaluator::finish_column(double* p, double t) const {
  const std::size_t n = dim();
  CompensatedSum total;
  for (std::size_t k = 0; k < n; ++k) {
    total += p[k];
    p[k] = std::clamp(p[k], 0.0, 1.0);
  }
  if (std::abs(total.value() - 1.0) > trace_tol_)
    throw NumericError("reduced density at t=" + std::to_string(t) + " lost normalization: sum=" +
                           std::to_string(total.value()),
                       std::abs(total.value() - 1.0));
}

std::vector<double> DensityEvaluator::at(double t) const {
  std::vector<double> out;
  const double times[1] = {t};
  for_each(times, [&](std::size_t, std::span<const double> p) { out.assign(p.begin(), p.end()); });
  return out;
}

void DensityEvaluator::for_each(
    std::span<const double> times,
    const std::function<void(std::size_t, std::span<const double>)>& visit) const {
  Eigen::MatrixXd probs;
  for (std::size_t start = 0; start < times.size(); start += kBlock) {
    const std::size_t len = std::min(kBlock, times.size() - start);
    evaluate_block(times.subspan(start, len), probs);
    for (std::size_t i = 0; i < len; ++i)
      visit(start + i, std::span<const double>(probs.col(static_cast<Eigen::Index>(i)).data(), dim()));
  }
}

ReducedDensityDiagonal reduced_density_at(const Spectrum& spec, double t, double trace_tol) {
  if (!(t >= 0.0)) throw ParameterError("t", "time must be >= 0 (got " + std::to_string(t) + ")");
  return {DensityEvaluator(spec, trace_tol).at(t), t};
}

double renyi_entropy(std::span<const double> p, double alpha) {
  if (!(alpha > 0.0))
    throw ParameterError("alpha", "alpha must be > 0 (got " + std::to_string(alpha) + ")");
  if (alpha == 1.0)
    throw ParameterError("alpha",
                         "alpha = 1 (von Neumann limit) is not a supported Renyi order");
  CompensatedSum moment;
  if (alpha == 2.0) {
    for (double x : p) moment += x * x;
  } else {
    for (double x : p)
      if (x > 0.0) moment += std::pow(x, alpha);
  }
  assert(moment.value() > 0.0 && "reduced density cannot vanish identically");
  const double s = std::log2(moment.value()) / (1.0 - alpha);
  // A pure state gives log2(1) = 0 up to rounding; report it as exactly 0.
  return s < 0.0 ? 0.0 : s;
}

EntropyTimeSeries evolve_series(const ModelParams& params, std::span<const double> t_grid) {
  params.validate();
  if (t_grid.empty()) throw ParameterError("t_grid", "time grid is empty");
  if (t_grid.front() < 0.0) throw ParameterError("t_grid", "time grid starts before t = 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw ParameterError("t_grid", "time grid must be strictly ascending");

  const Spectrum spec = diagonalize(build_hamiltonian(params), params.eig_tol);
  const DensityEvaluator eval(spec, params.trace_tol);

  EntropyTimeSeries out;
  out.params = params;
  out.times.assign(t_grid.begin(), t_grid.end());
  out.entropy.resize(t_grid.size());
  eval.for_each(t_grid, [&](std::size_t i, std::span<const double> p) {
    out.entropy[i] = renyi_entropy(p, params.alpha);
  });
  return out;
}

ReducedDensityDiagonal analytic_u0_density(int N, double J, double t) {
  if (N < 1) throw ParameterError("N", "N must be >= 1 (got " + std::to_string(N) + ")");
  if (!(J >= 0.0)) throw ParameterError("J", "J must be >= 0 (got " + std::to_string(J) + ")");
  const double c2 = std::pow(std::cos(J * t), 2);
  const double s2 = std::pow(std::sin(J * t), 2);
  ReducedDensityDiagonal out;
  out.t = t;
  out.p.resize(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    // log-binomial keeps large N finite
    const double log_binom = std::lgamma(N + 1.0) - std::lgamma(n + 1.0) - std::lgamma(N - n + 1.0);
    const double a = (N - n) == 0 ? 1.0 : std::pow(c2, N - n);
    const double b = n == 0 ? 1.0 : std::pow(s2, n);
    out.p[n] = std::exp(log_binom) * a * b;
  }
  return out;
}

}  // namespace bjj
