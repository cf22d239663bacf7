#pragma once

#include "bjj/model.hpp"
#include "bjj/spectral.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace bjj {

/// Diagonal of the left-well reduced density matrix, rho^L_n for n = 0..N.
/// `t` is empty for an observation-time-averaged density.
struct ReducedDensityDiagonal {
  std::vector<double> p;
  std::optional<double> t;
};

struct EntropyTimeSeries {
  std::vector<double> times;
  std::vector<double> entropy;  ///< bits
  ModelParams params;
};

/// Evaluates rho^L_n(t) = |A_n(t)|^2, A_n(t) = sum_j V[n,j] w[j] exp(-i E_j t),
/// for many time points at once. Cost is O(N^2) per time point.
class DensityEvaluator {
 public:
  explicit DensityEvaluator(const Spectrum& spec, double trace_tol = 1e-10);

  std::size_t dim() const { return energies_.size(); }

  std::vector<double> at(double t) const;

  /// Calls visit(i, p) for each times[i], in order. `p` is only valid during the call.
  void for_each(std::span<const double> times,
                const std::function<void(std::size_t, std::span<const double>)>& visit) const;

 private:
  void evaluate_block(std::span<const double> times, Eigen::MatrixXd& probs) const;
  void finish_column(double* p, double t) const;

  std::vector<double> energies_;
  Eigen::MatrixXd weights_;  // V[n,j] * w[j]
  double trace_tol_;
};

/// Instantaneous reduced density; t >= 0.
ReducedDensityDiagonal reduced_density_at(const Spectrum& spec, double t,
                                          double trace_tol = 1e-10);

/// (1/(1-alpha)) log2 sum_n p_n^alpha, in bits. alpha = 1 is rejected.
double renyi_entropy(std::span<const double> p, double alpha = 2.0);

/// Renyi entropy at every grid time; the grid must be nonempty and ascending.
EntropyTimeSeries evolve_series(const ModelParams& params, std::span<const double> t_grid);

/// Closed form at U = 0: binomial rotation of |0,N>,
/// p_n = C(N,n) cos^{2(N-n)}(Jt) sin^{2n}(Jt).
ReducedDensityDiagonal analytic_u0_density(int N, double J, double t);

}  // namespace bjj
