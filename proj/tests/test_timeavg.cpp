#include "bjj/errors.hpp"
#include "bjj/model.hpp"
#include "bjj/spectral.hpp"
#include "bjj/timeavg.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace bjj;

namespace {

ModelParams params(int n, double j, double u) {
  ModelParams p;
  p.N = n;
  p.J = j;
  p.U = u;
  return p;
}

std::vector<double> average(const ModelParams& p, double s = 1.0) {
  return averaged_reduced_density(diagonalize(build_hamiltonian(p)), s).p;
}

// Unsymmetrized complex pair sum: sum c_n / (1 + i dE / s).
std::vector<std::complex<double>> complex_pair_sum(const Spectrum& spec, double s) {
  const auto n = static_cast<Eigen::Index>(spec.dim());
  std::vector<std::complex<double>> out(spec.dim());
  for (Eigen::Index row = 0; row < n; ++row)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) {
        const double c = spec.eigvecs(row, j) * spec.overlaps[j] * spec.eigvecs(row, k) * spec.overlaps[k];
        out[row] += c / std::complex<double>(1.0, (spec.energies[j] - spec.energies[k]) / s);
      }
  return out;
}

}  // namespace

TEST_CASE("averaged_reduced_density: frozen state at J = 0") {
  const auto p = average(params(9, 0.0, 1.0));
  CHECK(p[0] == doctest::Approx(1.0));
  for (std::size_t n = 1; n < p.size(); ++n) CHECK(p[n] == 0.0);
}

TEST_CASE("averaged_reduced_density: single boson closed form") {
  const auto p = average(params(1, 1.0, 0.0));
  CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-13));
  CHECK(p[1] == doctest::Approx(0.4).epsilon(1e-13));
  for (double s : {0.3, 2.0, 7.5}) {
    const double j = 0.9;
    const auto q = average(params(1, j, 0.0), s);
    CHECK(q[0] == doctest::Approx(0.5 + 0.5 * s * s / (s * s + 4 * j * j)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(average(params(1, 1.0, 0.0), 0.0), ParameterError);
  CHECK_THROWS_AS(average(params(1, 1.0, 0.0), -1.0), ParameterError);
}

TEST_CASE("averaged_reduced_density: real kernel equals the complex pair sum") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> c(0.0, 2.0);
  for (int n : {2, 5, 12, 30}) {
    const Spectrum spec = diagonalize(build_hamiltonian(params(n, c(rng), c(rng))));
    const double s = 0.5 + c(rng);
    const auto real = averaged_reduced_density(spec, s).p;
    const auto cplx = complex_pair_sum(spec, s);
    for (std::size_t k = 0; k < real.size(); ++k) {
      CHECK(std::abs(cplx[k].imag()) <= 1e-12);
      CHECK(std::abs(cplx[k].real() - real[k]) <= 1e-12);
    }
  }
}

TEST_CASE("property: trace, positivity and entropy bounds for random parameters") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> n_dist(1, 200);
  std::uniform_real_distribution<double> c(0.0, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = params(n_dist(rng), c(rng), c(rng));
    const auto avg = average(p);
    double sum = 0.0;
    for (double x : avg) {
      CHECK(x >= -1e-10);
      sum += x;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-10);
    const double e = averaged_entropy(p);
    CHECK(e >= 0.0);
    CHECK(e <= std::log2(p.N + 1.0) + 1e-10);
  }
}

TEST_CASE("property: continuity as J goes to zero") {
  for (int n : {4, 10, 31}) {
    const auto a = average(params(n, 1e-8, 0.7));
    const auto b = average(params(n, 0.0, 0.7));
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-6);
  }
}

TEST_CASE("property: flipping eigenvector signs leaves the average unchanged") {
  const Spectrum spec = diagonalize(build_hamiltonian(params(25, 1.1, 0.3)));
  Spectrum flipped = spec;
  for (Eigen::Index j = 0; j < flipped.eigvecs.cols(); j += 3) {
    flipped.eigvecs.col(j) *= -1.0;
    flipped.overlaps[j] = -flipped.overlaps[j];
  }
  const auto a = averaged_reduced_density(spec, 1.0).p;
  const auto b = averaged_reduced_density(flipped, 1.0).p;
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-14);
}

TEST_CASE("averaged_entropy") {
  CHECK(averaged_entropy(params(15, 0.0, 1.0)) == 0.0);
  CHECK(averaged_entropy(params(1, 1.0, 0.0)) == doctest::Approx(-std::log2(0.52)).epsilon(1e-12));
  const double s10 = averaged_entropy(params(20, 10.0, 1.0));
  const double s20 = averaged_entropy(params(20, 20.0, 1.0));
  CHECK(std::abs(s10 - s20) <= 0.05 * std::max(s10, s20));
}

TEST_CASE("entanglement_spectrum: delta at J = 0") {
  const auto es = entanglement_spectrum(params(6, 0.0, 1.0));
  CHECK(es.xi[0] == 0.0);
  CHECK_FALSE(es.clamped[0]);
  for (std::size_t n = 1; n < es.xi.size(); ++n) {
    CHECK(es.clamped[n]);
    CHECK(std::isfinite(es.xi[n]));
  }
  CHECK(es.level_spread() == 0.0);
}

TEST_CASE("entanglement_spectrum: single boson levels in both bases") {
  const auto e = entanglement_spectrum(params(1, 1.0, 0.0));
  CHECK(e.xi[0] == doctest::Approx(std::log(0.6)).epsilon(1e-12));
  CHECK(e.xi[1] == doctest::Approx(std::log(0.4)).epsilon(1e-12));
  const auto b = entanglement_spectrum(params(1, 1.0, 0.0), LogBase::two);
  CHECK(b.base == LogBase::two);
  CHECK(b.xi[0] == doctest::Approx(std::log2(0.6)).epsilon(1e-12));
}

TEST_CASE("property: exp(xi) sums to one") {
  for (double u : {0.01, 0.1, 1.0, 5.0}) {
    const auto es = entanglement_spectrum(params(40, 1.0, u));
    double sum = 0.0;
    for (std::size_t n = 0; n < es.xi.size(); ++n)
      if (!es.clamped[n]) sum += std::exp(es.xi[n]);
    CHECK(std::abs(sum - 1.0) <= 1e-10);
  }
}

TEST_CASE("entanglement_spectrum: repulsive levels in the localized phase") {
  const double tunneling = entanglement_spectrum(params(10, 1.0, 0.1)).level_spread();
  const double localized = entanglement_spectrum(params(10, 1.0, 1.0)).level_spread();
  CHECK(tunneling < localized);
}
