#include "bjj/model.hpp"

#include "bjj/errors.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace bjj {

namespace {

std::string fmt_value(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void require(bool ok, const char* field, const std::string& rule, double got) {
  if (!ok)
    throw ParameterError(field, std::string(field) + " must be " + rule + " (got " +
                                    fmt_value(got) + ")");
}

}  // namespace

void ModelParams::validate() const {
  require(N >= 1, "N", ">= 1", N);
  require(std::isfinite(J) && J >= 0.0, "J", ">= 0", J);
  require(std::isfinite(U) && U >= 0.0, "U", ">= 0", U);
  require(std::isfinite(s) && s > 0.0, "s", "> 0", s);
  require(std::isfinite(alpha) && alpha > 0.0, "alpha", "> 0", alpha);
  if (alpha == 1.0)
    throw ParameterError("alpha",
                         "alpha = 1 (von Neumann limit) is not a supported Renyi order");
  require(eig_tol > 0.0, "eig_tol", "> 0", eig_tol);
  require(trace_tol > 0.0, "trace_tol", "> 0", trace_tol);
}

double TridiagonalHamiltonian::norm() const {
  const std::size_t n = dim();
  double best = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double row = std::abs(diag[k]);
    if (k > 0) row += std::abs(offdiag[k - 1]);
    if (k + 1 < n) row += std::abs(offdiag[k]);
    best = std::max(best, row);
  }
  return best;
}

Eigen::MatrixXd TridiagonalHamiltonian::dense() const {
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) h(k, k) = diag[k];
  for (Eigen::Index k = 0; k + 1 < n; ++k) h(k, k + 1) = h(k + 1, k) = offdiag[k];
  return h;
}

void TridiagonalHamiltonian::apply(const double* x, double* y) const {
  const std::size_t n = dim();
  for (std::size_t k = 0; k < n; ++k) {
    double acc = diag[k] * x[k];
    if (k > 0) acc += offdiag[k - 1] * x[k - 1];
    if (k + 1 < n) acc += offdiag[k] * x[k + 1];
    y[k] = acc;
  }
}

TridiagonalHamiltonian build_hamiltonian(const ModelParams& params) {
  params.validate();
  const int n_bosons = params.N;
  TridiagonalHamiltonian h;
  h.diag.resize(params.dim());
  h.offdiag.resize(params.dim() - 1);
  for (int k = 0; k <= n_bosons; ++k) {
    const double left = k, right = n_bosons - k;
    h.diag[k] = 0.5 * params.U * (left * left + right * right);
  }
  for (int k = 0; k < n_bosons; ++k)
    h.offdiag[k] = -params.J * std::sqrt(static_cast<double>(k + 1) * (n_bosons - k));
  return h;
}

Eigen::MatrixXd build_spin_hamiltonian(const ModelParams& params) {
  params.validate();
  const auto n = static_cast<Eigen::Index>(params.dim());
  const double spin = 0.5 * params.N;

  Eigen::MatrixXd lz = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd lx = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double m = static_cast<double>(k) - spin;
    lz(k, k) = m;
    if (k + 1 < n) lx(k, k + 1) = lx(k + 1, k) = 0.5 * std::sqrt(spin * (spin + 1) - m * (m + 1));
  }
  const double shift = 0.25 * params.U * params.N * params.N;
  return params.U * (lz * lz) - 2.0 * params.J * lx +
         shift * Eigen::MatrixXd::Identity(n, n);
}

double characteristic_u(const ModelParams& params) {
  params.validate();
  if (params.J == 0.0)
    throw ParameterError("J", "characteristic parameter u = U N / J is undefined for J = 0");
  return params.U * params.N / params.J;
}

}  // namespace bjj
