#include "bjj/errors.hpp"
#include "bjj/model.hpp"
#include "bjj/spectral.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
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

Spectrum solve(const ModelParams& p) { return diagonalize(build_hamiltonian(p)); }

}  // namespace

TEST_CASE("diagonalize: U = 0 ladder for N = 2") {
  const Spectrum s = solve(params(2, 1.0, 0.0));
  REQUIRE(s.dim() == 3);
  CHECK(s.energies[0] == doctest::Approx(-2.0));
  CHECK(std::abs(s.energies[1]) < 1e-14);
  CHECK(s.energies[2] == doctest::Approx(2.0));
}

TEST_CASE("diagonalize: J = 0 gives the sorted diagonal and unit vectors") {
  const auto h = build_hamiltonian(params(5, 0.0, 1.0));
  const Spectrum s = diagonalize(h);
  std::vector<double> sorted = h.diag;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t j = 0; j < s.dim(); ++j) {
    CHECK(s.energies[j] == doctest::Approx(sorted[j]));
    const Eigen::VectorXd col = s.eigvecs.col(static_cast<Eigen::Index>(j)).cwiseAbs();
    CHECK(col.maxCoeff() == doctest::Approx(1.0));
    CHECK(col.sum() == doctest::Approx(1.0));
  }
}

TEST_CASE("diagonalize: residual, orthonormality and overlap norm for random parameters") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> c(0.0, 2.0);
  std::uniform_int_distribution<int> n_dist(1, 120);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = params(trial < 20 ? 6 : n_dist(rng), c(rng), c(rng));
    const auto h = build_hamiltonian(p);
    const Spectrum s = diagonalize(h);
    const auto n = static_cast<Eigen::Index>(s.dim());
    CHECK(max_residual(h, s) <= 1e-10 * std::max(h.norm(), 1e-300));
    const Eigen::MatrixXd gram = s.eigvecs.transpose() * s.eigvecs;
    CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
    double w2 = 0.0;
    for (double w : s.overlaps) w2 += w * w;
    CHECK(w2 == doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t j = 0; j < s.dim(); ++j) {
      CHECK(s.overlaps[j] == s.eigvecs(0, static_cast<Eigen::Index>(j)));
      if (j > 0) CHECK(s.energies[j] >= s.energies[j - 1]);
    }
  }
}

TEST_CASE("diagonalize: eigenvalues agree with a dense reference solver") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> c(0.0, 3.0);
  for (int n : {1, 2, 3, 8, 20, 50, 100, 200}) {
    const auto h = build_hamiltonian(params(n, c(rng), c(rng)));
    const Spectrum s = diagonalize(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(h.dense(), Eigen::EigenvaluesOnly);
    for (std::size_t j = 0; j < s.dim(); ++j)
      CHECK(std::abs(s.energies[j] - ref.eigenvalues()(static_cast<Eigen::Index>(j))) <= 1e-11 * h.norm());
  }
}

TEST_CASE("diagonalize: sign convention makes the largest component positive") {
  const Spectrum s = solve(params(30, 1.0, 0.2));
  for (Eigen::Index j = 0; j < s.eigvecs.cols(); ++j) {
    Eigen::Index at = 0;
    s.eigvecs.col(j).cwiseAbs().maxCoeff(&at);
    CHECK(s.eigvecs(at, j) > 0.0);
  }
}

TEST_CASE("property: repeated diagonalization is bit-identical") {
  const auto h = build_hamiltonian(params(57, 0.9, 0.31));
  const Spectrum a = diagonalize(h);
  const Spectrum b = diagonalize(h);
  CHECK(a.energies == b.energies);
  CHECK(a.overlaps == b.overlaps);
  CHECK(a.eigvecs == b.eigvecs);
}

TEST_CASE("property: U = 0 spectrum is equidistant with spacing 2J") {
  for (int n : {1, 5, 40, 101, 200}) {
    const double j = 0.75;
    const Spectrum s = solve(params(n, j, 0.0));
    for (std::size_t k = 1; k < s.dim(); ++k)
      CHECK(std::abs(s.energies[k] - s.energies[k - 1] - 2.0 * j) <= 1e-10 * j);
  }
}

TEST_CASE("property: trace identity") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> c(0.0, 2.0);
  for (int n : {3, 17, 64, 150}) {
    const auto h = build_hamiltonian(params(n, c(rng), c(rng)));
    const Spectrum s = diagonalize(h);
    double te = 0.0, td = 0.0;
    for (double e : s.energies) te += e;
    for (double d : h.diag) td += d;
    CHECK(std::abs(te - td) <= 1e-9 * h.norm());
  }
}

TEST_CASE("diagonalize: an unreachable tolerance reports the worst residual") {
  const auto h = build_hamiltonian(params(20, 1.0, 0.5));
  try {
    diagonalize(h, 1e-30);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.worst_residual() > 0.0);
  }
  TridiagonalHamiltonian bad;
  bad.diag = {1.0, 2.0};
  bad.offdiag = {};
  CHECK_THROWS_AS(diagonalize(bad), ParameterError);
}

TEST_CASE("bohr_frequencies: count and extremes") {
  CHECK(bohr_frequencies(solve(params(2, 1.0, 0.3))).count() == 3);
  for (int n : {1, 4, 9, 30}) CHECK(bohr_frequencies(solve(params(n, 0.6, 0.2))).count() == std::size_t(n) * (n + 1) / 2);
  const Spectrum s = solve(params(12, 0.6, 0.2));
  CHECK(bohr_frequencies(s).max() == doctest::Approx(s.energies.back() - s.energies.front()));
}

TEST_CASE("bohr_frequencies: U = 0 ladder has multiples of 2J") {
  const auto distinct = bohr_frequencies(solve(params(4, 1.0, 0.0))).distinct(1e-9);
  REQUIRE(distinct.size() == 4);
  for (std::size_t k = 0; k < distinct.size(); ++k) CHECK(distinct[k] == doctest::Approx(2.0 * (k + 1)));
}

TEST_CASE("bohr_frequencies: J = 0 maximal frequency is U N^2 / 4") {
  for (int n : {2, 10, 40}) CHECK(bohr_frequencies(solve(params(n, 0.0, 1.0))).max() == doctest::Approx(n * n / 4.0));
}
