#include "bjj/spectral.hpp"

#include "bjj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace bjj {

namespace {

constexpr int kMaxSweepsPerEigenvalue = 60;

// Symmetric tridiagonal QL with implicit Wilkinson shifts, accumulating the
// rotations into z (EISPACK tql2). d holds the diagonal, e the subdiagonal
// stored at e[0..n-2]; on return d holds unsorted eigenvalues.
// Returns false if some eigenvalue exceeded the sweep budget.
bool tql2(std::vector<double>& d, std::vector<double>& e, Eigen::MatrixXd& z) {
  const auto n = static_cast<Eigen::Index>(d.size());
  e.resize(d.size());
  e[n - 1] = 0.0;

  const double eps = std::numeric_limits<double>::epsilon();
  double shift_total = 0.0;
  double tst1 = 0.0;
  for (Eigen::Index l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    Eigen::Index m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > kMaxSweepsPerEigenvalue) return false;

        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (Eigen::Index i = l + 2; i < n; ++i) d[i] -= h;
        shift_total += h;

        // Implicit QL sweep from m back up to l.
        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (Eigen::Index i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);

          auto zi = z.col(i);
          auto zi1 = z.col(i + 1);
          for (Eigen::Index k = 0; k < n; ++k) {
            const double t = zi1(k);
            zi1(k) = s * zi(k) + c * t;
            zi(k) = c * zi(k) - s * t;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += shift_total;
    e[l] = 0.0;
  }
  return true;
}

double column_residual(const TridiagonalHamiltonian& h, const Eigen::MatrixXd& v,
                       Eigen::Index j, double energy, std::vector<double>& scratch) {
  const auto n = static_cast<Eigen::Index>(h.dim());
  scratch.resize(h.dim());
  h.apply(v.col(j).data(), scratch.data());
  double ss = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double r = scratch[k] - energy * v(k, j);
    ss += r * r;
  }
  return std::sqrt(ss);
}

double worst_residual(const TridiagonalHamiltonian& h, const std::vector<double>& energies,
                      const Eigen::MatrixXd& v) {
  std::vector<double> scratch;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    worst = std::max(worst, column_residual(h, v, j, energies[j], scratch));
  return worst;
}

}  // namespace

Spectrum diagonalize(const TridiagonalHamiltonian& h, double tol) {
  const std::size_t n = h.dim();
  if (n == 0 || h.offdiag.size() + 1 != n)
    throw ParameterError("H", "tridiagonal Hamiltonian has inconsistent dimensions");

  std::vector<double> d = h.diag;
  std::vector<double> e = h.offdiag;
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);
  if (!tql2(d, e, z))
    throw NumericError("tridiagonal QL did not converge within " +
                           std::to_string(kMaxSweepsPerEigenvalue) + " sweeps per eigenvalue",
                       worst_residual(h, d, z));

  // Ascending order; ties broken by original position so output is bit-stable.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  Spectrum spec;
  spec.energies.resize(n);
  spec.eigvecs.resize(n, n);
  spec.overlaps.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    spec.energies[j] = d[order[j]];
    auto col = spec.eigvecs.col(j);
    col = z.col(order[j]);
    Eigen::Index pivot = 0;
    col.cwiseAbs().maxCoeff(&pivot);
    if (col(pivot) < 0) col = -col;
    spec.overlaps[j] = col(0);
  }

  const double worst = worst_residual(h, spec.energies, spec.eigvecs);
  if (worst > tol * h.norm())
    throw NumericError("eigen-residual " + std::to_string(worst) + " exceeds tolerance " +
                           std::to_string(tol) + " * ||H||",
                       worst);
  return spec;
}

double max_residual(const TridiagonalHamiltonian& h, const Spectrum& spec) {
  return worst_residual(h, spec.energies, spec.eigvecs);
}

std::vector<double> FrequencyTable::distinct(double tol) const {
  std::vector<double> out;
  for (double f : freqs)
    if (out.empty() || f - out.back() > tol) out.push_back(f);
  return out;
}

FrequencyTable bohr_frequencies(const Spectrum& spec) {
  FrequencyTable table;
  const std::size_t n = spec.dim();
  table.freqs.reserve(n * (n - 1) / 2);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t jp = j + 1; jp < n; ++jp)
      table.freqs.push_back(std::abs(spec.energies[jp] - spec.energies[j]));
  std::sort(table.freqs.begin(), table.freqs.end());
  return table;
}

}  // namespace bjj
