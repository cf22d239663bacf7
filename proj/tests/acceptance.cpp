// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance                 run all criteria
//   acceptance --criterion k   run criterion k only
#include "bjj/cli/table.hpp"
#include "bjj/dynamics.hpp"
#include "bjj/model.hpp"
#include "bjj/oracle.hpp"
#include "bjj/scans.hpp"
#include "bjj/spectral.hpp"
#include "bjj/timeavg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

using namespace bjj;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

ModelParams params(int n, double j, double u) {
  ModelParams p;
  p.N = n;
  p.J = j;
  p.U = u;
  return p;
}

ScanOptions scan_opts() {
  ScanOptions o;
  o.workers = std::max(1u, std::thread::hardware_concurrency());
  return o;
}

// Long-time mean of S(t) over t in [50, 1000], dt = 0.1, N = 100, J = 1.
Outcome fig1_means() {
  Outcome o;
  const std::vector<double> grid = time_grid(1000.0, 0.1);
  const std::pair<double, double> cases[] = {{0.01, 3.8}, {0.1, 1.5}};
  for (const auto& [u, target] : cases) {
    const EntropyTimeSeries s = evolve_series(params(100, 1.0, u), grid);
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (grid[i] >= 50.0 - 1e-9) {
        sum += s.entropy[i];
        ++count;
      }
    const double mean = sum / count;
    const bool ok = std::abs(mean - target) <= 0.3;
    o.pass = o.pass && ok;
    o.detail += "U=" + fmt("%g", u) + ": mean=" + fmt("%.3f", mean) + " bits (target " + fmt("%.1f", target) +
                "±0.3" + (ok ? "" : ", miss") + "; in nats " + fmt("%.3f", mean * std::numbers::ln2) + ") ";
  }
  return o;
}

Outcome critical_argmax() {
  const CriticalEstimate e = locate_critical_argmax(params(4, 3.0, 0.4), 4, 80, scan_opts());
  Outcome o;
  o.pass = std::abs(e.u_c - 3.7) <= 0.4 && e.u_c < kMeanFieldCriticalU;
  o.detail = "u_c=" + fmt("%.3f", e.u_c) + " bracket=[" + fmt("%.3f", e.bracket.first) + "," +
             fmt("%.3f", e.bracket.second) + "] (target 3.7±0.4, < 4)";
  return o;
}

Outcome critical_knee() {
  Outcome o;
  std::vector<double> us;
  for (int n : {40, 60, 80}) {
    const CriticalEstimate e = locate_critical_knee(params(n, 1.0, 1.0), 0.02 * n, 0.6 * n, 60, scan_opts());
    const double ratio = *e.j_knee / n;
    const bool ok = std::abs(ratio - 0.27) <= 0.03;
    o.pass = o.pass && ok;
    us.push_back(e.u_c);
    o.detail += "N=" + std::to_string(n) + ": J_knee/N=" + fmt("%.3f", ratio) + " u=" + fmt("%.3f", e.u_c) + "; ";
  }
  const auto [lo, hi] = std::minmax_element(us.begin(), us.end());
  o.pass = o.pass && (*hi - *lo) <= 0.4;
  o.detail += "u window " + fmt("%.3f", *hi - *lo) + " (targets 0.27±0.03, window <= 0.4)";
  return o;
}

Outcome scaling_laws() {
  std::vector<int> ns;
  for (int n = 10; n <= 100; n += 10) ns.push_back(n);
  const ScalingFit low = fit_scaling(1.0, ns, params(10, 1.0, 1.0), scan_opts());
  const ScalingFit high = fit_scaling(40.0, ns, params(10, 1.0, 1.0), scan_opts());
  Outcome o;
  o.pass = low.model_log.rms < low.model_lin.rms && high.model_lin.rms < high.model_log.rms;
  o.detail = "u=1 rms log " + fmt("%.4g", low.model_log.rms) + " vs linear " + fmt("%.4g", low.model_lin.rms) +
             "; u=40 rms linear " + fmt("%.4g", high.model_lin.rms) + " vs log " + fmt("%.4g", high.model_log.rms);
  return o;
}

Outcome u0_analytics() {
  using std::numbers::pi;
  double gap_err = 0.0, p0_err = 0.0, period_err = 0.0;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t_dist(0.0, 100.0);
  for (int n : {1, 10, 50, 100, 200}) {
    for (double j : {0.5, 1.0, 2.0}) {
      const Spectrum spec = diagonalize(build_hamiltonian(params(n, j, 0.0)));
      for (std::size_t k = 1; k < spec.dim(); ++k)
        gap_err = std::max(gap_err, std::abs(spec.energies[k] - spec.energies[k - 1] - 2 * j) / j);
      const DensityEvaluator eval(spec);
      for (int i = 0; i < 20; ++i) {
        const double t = t_dist(rng);
        p0_err = std::max(p0_err, std::abs(eval.at(t)[0] - std::pow(std::cos(j * t), 2 * n)));
        const double a = renyi_entropy(eval.at(t)), b = renyi_entropy(eval.at(t + pi / (2 * j)));
        period_err = std::max(period_err, std::abs(a - b));
      }
    }
  }
  Outcome o;
  o.pass = gap_err <= 1e-10 && p0_err <= 1e-10 && period_err <= 1e-8;
  o.detail = "spacing err " + fmt("%.2e", gap_err) + " (<=1e-10), cos^2N err " + fmt("%.2e", p0_err) +
             " (<=1e-10), period err " + fmt("%.2e", period_err) + " (<=1e-8)";
  return o;
}

Outcome j0_limit() {
  double s_max = 0.0, avg_max = 0.0;
  bool delta = true;
  const std::vector<double> grid = time_grid(100.0, 0.1);
  for (int n : {1, 7, 50, 100}) {
    for (double u : {0.0, 0.01, 1.0}) {
      const auto p = params(n, 0.0, u);
      for (double s : evolve_series(p, grid).entropy) s_max = std::max(s_max, std::abs(s));
      avg_max = std::max(avg_max, std::abs(averaged_entropy(p)));
      const auto es = entanglement_spectrum(p);
      delta = delta && es.xi[0] == 0.0 && !es.clamped[0];
      for (std::size_t k = 1; k < es.xi.size(); ++k) delta = delta && es.clamped[k];
    }
  }
  Outcome o;
  o.pass = s_max <= 1e-12 && avg_max == 0.0 && delta;
  o.detail = "max |S(t)| " + fmt("%.2e", s_max) + ", max averaged S " + fmt("%.2e", avg_max) +
             ", spectrum delta: " + (delta ? "yes" : "no");
  return o;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> n_dist(2, 8);
  double density_err = 0.0, avg_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = params(n_dist(rng), 2.0 * (1.0 - unit(rng)), 2.0 * (1.0 - unit(rng)));
    std::vector<double> times(20);
    for (double& t : times) t = 50.0 * unit(rng);
    std::sort(times.begin(), times.end());
    const Spectrum spec = diagonalize(build_hamiltonian(p));
    const auto cfg = oracle::IntegratorConfig::for_accuracy(p, times.back(), 1e-10);
    const auto trace = oracle::integrate_states(p, times, cfg);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const auto ref = reduced_density_at(spec, times[i]).p;
      for (std::size_t n = 0; n < ref.size(); ++n)
        density_err = std::max(density_err, std::abs(ref[n] - trace.samples[i].p[n]));
    }
    const auto pair = averaged_reduced_density(spec, 1.0).p;
    const auto quad = oracle::quadrature_average(p, 1.0, 40.0).average.p;
    for (std::size_t n = 0; n < pair.size(); ++n) avg_err = std::max(avg_err, std::abs(pair[n] - quad[n]));
  }
  Outcome o;
  o.pass = density_err <= 1e-8 && avg_err <= 1e-6;
  o.detail = "spectral vs RK4 " + fmt("%.2e", density_err) + " (<=1e-8), pair sum vs quadrature " +
             fmt("%.2e", avg_err) + " (<=1e-6)";
  return o;
}

Outcome element_growth() {
  std::vector<double> ns, second;
  double at100 = 0.0;
  for (int n : {50, 100, 150, 200}) {
    const MaxElementTrace tr = track_max_elements(params(n, 1.0, 40.0 / n), 2000.0, 0.1);
    ns.push_back(n);
    second.push_back(tr.second.value);
    if (n == 100) at100 = tr.second.value;
  }
  const LineFit fit = fit_line(ns, second);
  Outcome o;
  o.pass = std::abs(fit.slope - 0.002) <= 0.0007 && std::abs(at100 - 0.2) <= 0.3 * 0.2;
  o.detail = "slope " + fmt("%.5f", fit.slope) + " (0.002±0.0007), N=100 second " + fmt("%.4f", at100) +
             " (0.2±30%)";
  return o;
}

Outcome xi_spread() {
  auto spread = [](double u) { return entanglement_spectrum(params(10, 1.0, u / 10.0)).level_spread(); };
  const double a = spread(0.5), b = spread(1.0), c = spread(10.0), d = spread(20.0);
  Outcome o;
  o.pass = std::min(c, d) > std::max(a, b) && d > c;
  o.detail = "spread u=0.5: " + fmt("%.3f", a) + ", u=1: " + fmt("%.3f", b) + ", u=10: " + fmt("%.3f", c) +
             ", u=20: " + fmt("%.3f", d);
  return o;
}

Outcome invariant_suite() {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> n_dist(1, 120);
  std::uniform_real_distribution<double> c(0.0, 2.0), t_dist(0.0, 1000.0);
  int failures = 0;
  double worst_trace = 0.0, worst_builder = 0.0, worst_sign = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = params(n_dist(rng), c(rng), c(rng));
    const auto h = build_hamiltonian(p);
    const double builder = (h.dense() - build_spin_hamiltonian(p)).cwiseAbs().maxCoeff();
    worst_builder = std::max(worst_builder, builder / std::max(h.norm(), 1e-300));
    if (builder > 1e-12 * h.norm()) ++failures;

    const Spectrum spec = diagonalize(h);
    if (bohr_frequencies(spec).count() != spec.dim() * (spec.dim() - 1) / 2) ++failures;

    const double bound = std::log2(p.N + 1.0) + p.trace_tol;
    const DensityEvaluator eval(spec);
    for (int i = 0; i < 5; ++i) {
      const auto d = eval.at(t_dist(rng));
      double sum = 0.0;
      for (double x : d) sum += x;
      worst_trace = std::max(worst_trace, std::abs(sum - 1.0));
      const double e = renyi_entropy(d);
      if (e < 0.0 || e > bound) ++failures;
    }
    const auto avg = averaged_reduced_density(spec, 1.0).p;
    double sum = 0.0;
    for (double x : avg) sum += x;
    worst_trace = std::max(worst_trace, std::abs(sum - 1.0));
    const double e = renyi_entropy(avg);
    if (e < 0.0 || e > bound) ++failures;

    Spectrum flipped = spec;
    for (Eigen::Index j = trial % 2; j < flipped.eigvecs.cols(); j += 2) {
      flipped.eigvecs.col(j) *= -1.0;
      flipped.overlaps[j] = -flipped.overlaps[j];
    }
    const auto avg_f = averaged_reduced_density(flipped, 1.0).p;
    for (std::size_t n = 0; n < avg.size(); ++n) worst_sign = std::max(worst_sign, std::abs(avg[n] - avg_f[n]));
  }
  if (worst_trace > 1e-10) ++failures;
  if (worst_sign > 1e-14) ++failures;

  auto render = [](unsigned workers) {
    ScanOptions opts;
    opts.workers = workers;
    const ScanResult r = scan_1d(Axis::J, 0.5, 20.0, 40, params(30, 1.0, 0.5), opts);
    cli::Table t;
    t.columns = {"axis", "S"};
    for (std::size_t i = 0; i < r.axis.size(); ++i) t.rows.push_back({r.axis[i], r.S[i]});
    std::ostringstream os;
    cli::write_csv(os, t);
    return os.str();
  };
  const bool deterministic = render(1) == render(1) && render(1) == render(4);
  if (!deterministic) ++failures;

  Outcome o;
  o.pass = failures == 0;
  o.detail = std::to_string(failures) + " violations over 30 random cases; trace err " + fmt("%.2e", worst_trace) +
             ", builder diff " + fmt("%.2e", worst_builder) + "·||H||, sign flip " + fmt("%.2e", worst_sign) +
             ", scan bytes " + (deterministic ? "identical" : "differ");
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"long-time mean entropy, N=100 J=1", fig1_means},
      {"critical point, argmax mode", critical_argmax},
      {"critical point, knee mode", critical_knee},
      {"scaling laws at u=1 and u=40", scaling_laws},
      {"U=0 analytics", u0_analytics},
      {"J=0 limit", j0_limit},
      {"oracle equivalence", oracle_equivalence},
      {"linear growth of the second-dominant element", element_growth},
      {"entanglement-spectrum level spread", xi_spread},
      {"invariant suite", invariant_suite},
  };
  return all;
}

bool run_one(std::size_t k) {
  const Criterion& c = criteria()[k - 1];
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("error: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("c%02zu %s  %s: %s[%.1fs]\n", k, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs);
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    const long k = std::strtol(argv[2], nullptr, 10);
    if (k < 1 || k > static_cast<long>(criteria().size())) {
      std::fprintf(stderr, "criterion must be 1..%zu\n", criteria().size());
      return 2;
    }
    return run_one(static_cast<std::size_t>(k)) ? 0 : 1;
  }
  if (argc != 1) {
    std::fprintf(stderr, "usage: acceptance [--criterion k]\n");
    return 2;
  }
  int failed = 0;
  for (std::size_t k = 1; k <= criteria().size(); ++k)
    if (!run_one(k)) ++failed;
  std::printf("%d of %zu criteria failed\n", failed, criteria().size());
  return failed == 0 ? 0 : 1;
}
