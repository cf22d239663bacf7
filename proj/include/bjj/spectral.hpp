#pragma once

#include "bjj/model.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace bjj {

/// Full eigendecomposition of the Fock-basis Hamiltonian.
///
/// energies ascend; column j of `eigvecs` belongs to energies[j] and has its
/// largest-magnitude component positive. overlaps[j] = <E_j | 0, N>, i.e.
/// the Fock-index-0 component of column j.
struct Spectrum {
  std::vector<double> energies;
  Eigen::MatrixXd eigvecs;
  std::vector<double> overlaps;

  std::size_t dim() const { return energies.size(); }
};

/// Implicit-shift QL on the tridiagonal form.
///
/// Throws NumericError (carrying the worst residual) if an eigenvalue fails
/// to converge within the iteration budget, or if the final residual
/// ||H v - E v|| exceeds tol * ||H|| for some column.
Spectrum diagonalize(const TridiagonalHamiltonian& h, double tol = 1e-10);

/// Largest ||H v_j - E_j v_j||_2 over all columns.
double max_residual(const TridiagonalHamiltonian& h, const Spectrum& spec);

/// All pairwise gaps |E_j - E_j'|, j < j', sorted ascending.
struct FrequencyTable {
  std::vector<double> freqs;

  std::size_t count() const { return freqs.size(); }
  double max() const { return freqs.empty() ? 0.0 : freqs.back(); }
  /// Frequencies merged when closer than `tol`.
  std::vector<double> distinct(double tol) const;
};

FrequencyTable bohr_frequencies(const Spectrum& spec);

}  // namespace bjj
