#pragma once

// Two-site Bose-Hubbard model (bosonic Josephson junction).
//
// Basis: Fock states |k, N-k>, k = 0..N counting bosons in the LEFT well.
// The initial state |0, N> (all bosons on the right) is index 0.
// hbar = 1; J, U and s share one energy unit.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace bjj {

struct ModelParams {
  int N = 1;         ///< boson count, >= 1
  double J = 1.0;    ///< tunneling rate, >= 0
  double U = 0.0;    ///< on-site interaction, >= 0
  double s = 1.0;    ///< observation-time averaging rate, > 0
  double alpha = 2.0;  ///< Renyi order, > 0 and != 1
  double eig_tol = 1e-10;
  double trace_tol = 1e-10;

  /// Throws ParameterError naming the first field out of range.
  void validate() const;

  std::size_t dim() const { return static_cast<std::size_t>(N) + 1; }
};

/// Real symmetric tridiagonal matrix; only the upper off-diagonal is stored.
struct TridiagonalHamiltonian {
  std::vector<double> diag;     ///< size n
  std::vector<double> offdiag;  ///< size n-1; offdiag[k] couples k and k+1

  std::size_t dim() const { return diag.size(); }
  /// Max absolute row sum; an upper bound on the spectral norm.
  double norm() const;
  Eigen::MatrixXd dense() const;
  /// y = H x
  void apply(const double* x, double* y) const;
};

/// diag[k] = U/2 (k^2 + (N-k)^2), offdiag[k] = -J sqrt((k+1)(N-k)).
TridiagonalHamiltonian build_hamiltonian(const ModelParams& params);

/// U Lz^2 - 2J Lx + U N^2/4 in the Lz eigenbasis with S = N/2, m = k - N/2.
/// Same operator as build_hamiltonian, assembled from the spin algebra.
Eigen::MatrixXd build_spin_hamiltonian(const ModelParams& params);

/// u = U N / J. Throws ParameterError (field "J") when J = 0.
double characteristic_u(const ModelParams& params);

}  // namespace bjj
