#include "bjj/cli/commands.hpp"

#include "bjj/errors.hpp"
#include "bjj/numeric.hpp"
#include "bjj/timeavg.hpp"

#include <functional>
#include <map>

namespace bjj::cli {

namespace {

ModelParams make_params(int n, double j, double u) {
  ModelParams p;
  p.N = n;
  p.J = j;
  p.U = u;
  return p;
}

std::vector<double> n_range(int lo, int hi, int step) {
  std::vector<double> v;
  for (int n = lo; n <= hi; n += step) v.push_back(n);
  return v;
}

Table time_series(const ModelParams& p, double tmax, double dt) {
  EvolveOptions o;
  o.params = p;
  o.tmax = tmax;
  o.dt = dt;
  return run_evolve(o);
}

// Several time series stacked in long format with a leading U column.
Table time_series_over_u(const std::vector<double>& us, double tmax, double dt) {
  Table out;
  out.add_param("N", 100);
  out.add_param("J", 1);
  out.add_param("tmax", tmax);
  out.add_param("dt", dt);
  out.columns = {"U", "t", "S"};
  for (double u : us) {
    const Table t = time_series(make_params(100, 1.0, u), tmax, dt);
    for (const auto& row : t.rows) out.rows.push_back({u, row[0], row[1]});
  }
  return out;
}

Table grid(Axis x, std::vector<double> xs, Axis y, std::vector<double> ys, const ModelParams& fixed,
           const ScanOptions& scan) {
  const ScanGrid g = scan_2d(x, std::move(xs), y, std::move(ys), fixed, scan);
  Table t;
  t.columns = {std::string(to_string(x)), std::string(to_string(y)), "S"};
  for (std::size_t i = 0; i < g.x.size(); ++i)
    for (std::size_t j = 0; j < g.y.size(); ++j) t.rows.push_back({g.x[i], g.y[j], g.at(i, j)});
  return t;
}

Table scaling_preset(double u, const ScanOptions& scan) {
  ScalingCommandOptions o;
  o.u = u;
  o.fixed.U = 1.0;
  o.scan = scan;
  o.scan.convention = UConvention::fix_U;
  return run_scaling(o).table;
}

Table xi_preset(Axis vary, const std::vector<double>& values, const ModelParams& fixed) {
  Table t;
  t.add_param("N", fixed.N);
  if (vary == Axis::U) t.add_param("J", fixed.J);
  else t.add_param("U", fixed.U);
  t.add_param("xi-base", "e");
  t.columns = {std::string(to_string(vary)), "u", "n", "xi", "clamped"};
  for (double v : values) {
    const ModelParams p = params_at(vary, v, fixed);
    const EntanglementSpectrumResult es = entanglement_spectrum(p, LogBase::natural);
    const double u = characteristic_u(p);
    for (std::size_t n = 0; n < es.xi.size(); ++n)
      t.rows.push_back({v, u, static_cast<double>(n), es.xi[n], es.clamped[n] ? 1.0 : 0.0});
  }
  return t;
}

Table figure_1(double u) { return time_series(make_params(100, 1.0, u), 1000.0, 0.1); }

Table figure_2b(const ScanOptions& scan) {
  Table t = grid(Axis::N, {20, 40, 60, 80}, Axis::J, linspace(0.5, 40.0, 80), make_params(20, 1.0, 1.0), scan);
  t.add_param("U", 1);
  return t;
}

Table figure_2c(const ScanOptions& scan) {
  Table t = grid(Axis::J, linspace(0.25, 20.0, 40), Axis::U, linspace(0.1, 5.0, 40), make_params(20, 1.0, 1.0), scan);
  t.add_param("N", 20);
  return t;
}

Table figure_2d(const ScanOptions& scan) {
  Table t = grid(Axis::N, n_range(10, 80, 5), Axis::J, linspace(0.5, 40.0, 40), make_params(10, 1.0, 1.0), scan);
  t.add_param("U", 1);
  return t;
}

Table figure_2e(const ScanOptions& scan) {
  Table t = grid(Axis::N, n_range(10, 80, 5), Axis::U, linspace(0.005, 1.0, 40), make_params(10, 1.0, 1.0), scan);
  t.add_param("J", 1);
  return t;
}

Table figure_3a(const ScanOptions& scan) {
  Table t;
  t.add_param("U", 1);
  t.columns = {"N", "J", "J_over_N", "S"};
  const std::vector<double> ratios = linspace(0.02, 0.6, 59);
  for (int n : {40, 60, 80}) {
    std::vector<double> js;
    for (double r : ratios) js.push_back(r * n);
    const ScanResult r = scan_values(Axis::J, js, make_params(n, 1.0, 1.0), scan);
    for (std::size_t i = 0; i < js.size(); ++i) t.rows.push_back({double(n), r.axis[i], ratios[i], r.S[i]});
  }
  return t;
}

Table figure_3b(const ScanOptions& scan) {
  Table t;
  t.add_param("J", 1);
  t.columns = {"N", "U", "UN", "S"};
  const std::vector<double> products = linspace(0.5, 10.0, 39);
  for (int n : {40, 60, 80}) {
    std::vector<double> us;
    for (double x : products) us.push_back(x / n);
    const ScanResult r = scan_values(Axis::U, us, make_params(n, 1.0, 1.0), scan);
    for (std::size_t i = 0; i < us.size(); ++i) t.rows.push_back({double(n), r.axis[i], products[i], r.S[i]});
  }
  return t;
}

Table figure_3c(const ScanOptions& scan) {
  Table t;
  t.add_param("U", 0.4);
  t.columns = {"J", "N", "N_over_J", "u", "S"};
  const std::vector<double> ns = n_range(4, 80, 1);
  for (double j : {2.0, 3.0, 4.0}) {
    const ScanResult r = scan_values(Axis::N, ns, make_params(4, j, 0.4), scan);
    for (std::size_t i = 0; i < ns.size(); ++i)
      t.rows.push_back({j, ns[i], ns[i] / j, 0.4 * ns[i] / j, r.S[i]});
  }
  return t;
}

Table figure_3d(const ScanOptions& scan) {
  Table t;
  t.add_param("J", 3);
  t.columns = {"U", "N", "NU", "u", "S"};
  const std::vector<double> ns = n_range(4, 80, 1);
  for (double u : {0.3, 0.4, 0.5}) {
    const ScanResult r = scan_values(Axis::N, ns, make_params(4, 3.0, u), scan);
    for (std::size_t i = 0; i < ns.size(); ++i)
      t.rows.push_back({u, ns[i], ns[i] * u, u * ns[i] / 3.0, r.S[i]});
  }
  return t;
}

Table figure_4b(const ScanOptions& scan) {
  Table t;
  t.add_param("U", 1);
  t.add_param("u-convention", "fix-U");
  t.columns = {"u", "N", "S", "S_norm"};
  std::vector<int> ns;
  for (int n = 10; n <= 100; n += 10) ns.push_back(n);
  ScanOptions fixed_u = scan;
  fixed_u.convention = UConvention::fix_U;
  for (double u : {0.5, 1.0, 2.0, 3.0, 3.5, 3.7, 4.0, 5.0, 7.0, 10.0, 20.0, 40.0}) {
    const NormalizedScan s = normalized_scan(u, ns, make_params(10, 1.0, 1.0), fixed_u);
    for (std::size_t i = 0; i < ns.size(); ++i) t.rows.push_back({u, s.raw.axis[i], s.raw.S[i], s.normalized[i]});
  }
  return t;
}

Table figure_13a() {
  MaxElemsOptions o;
  o.params = make_params(100, 1.0, 0.01);
  o.tmax = 2000.0;
  o.dt = 0.1;
  return run_maxelems(o);
}

Table figure_13b() {
  Table t;
  t.add_param("J", 1);
  t.add_param("u", 40);
  t.add_param("tmax", 2000);
  t.add_param("dt", 0.1);
  t.columns = {"N", "n", "max_p"};
  std::vector<double> ns, seconds;
  for (int n : {50, 100, 150, 200}) {
    const MaxElementTrace tr = track_max_elements(make_params(n, 1.0, 40.0 / n), 2000.0, 0.1);
    for (std::size_t k = 0; k < tr.per_n_max.size(); ++k) t.rows.push_back({double(n), double(k), tr.per_n_max[k]});
    ns.push_back(n);
    seconds.push_back(tr.second.value);
    t.trailing.push_back("N=" + std::to_string(n) + " first=" + std::to_string(tr.first.index) + ":" +
                         format_number(tr.first.value) + " second=" + std::to_string(tr.second.index) + ":" +
                         format_number(tr.second.value));
  }
  const LineFit fit = fit_line(ns, seconds);
  t.trailing.push_back("second_vs_N: slope=" + format_number(fit.slope) + " intercept=" + format_number(fit.intercept));
  return t;
}

using Builder = std::function<Table(const ScanOptions&)>;

const std::map<std::string, Builder>& builders() {
  static const std::map<std::string, Builder> table = {
      {"1a", [](const ScanOptions&) { return figure_1(0.01); }},
      {"1b", [](const ScanOptions&) { return figure_1(0.1); }},
      {"2b", figure_2b},
      {"2c", figure_2c},
      {"2d", figure_2d},
      {"2e", figure_2e},
      {"3a", figure_3a},
      {"3b", figure_3b},
      {"3c", figure_3c},
      {"3d", figure_3d},
      {"4a", [](const ScanOptions& s) { return scaling_preset(1.0, s); }},
      {"4b", figure_4b},
      {"4c", [](const ScanOptions& s) { return scaling_preset(40.0, s); }},
      {"5a", [](const ScanOptions&) { return xi_preset(Axis::U, linspace(0.01, 3.0, 60), make_params(10, 1.0, 1.0)); }},
      {"5b", [](const ScanOptions&) { return xi_preset(Axis::J, linspace(0.1, 10.0, 60), make_params(10, 1.0, 1.0)); }},
      {"11", [](const ScanOptions&) { return time_series_over_u({0.0, 0.01, 0.1, 0.4, 1.0}, 100.0, 0.01); }},
      {"12", [](const ScanOptions&) { return time_series_over_u({0.01, 0.1, 0.4, 1.0}, 1000.0, 0.1); }},
      {"13a", [](const ScanOptions&) { return figure_13a(); }},
      {"13b", [](const ScanOptions&) { return figure_13b(); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"1a", "1b", "2b", "2c", "2d", "2e", "3a", "3b", "3c", "3d",
                                               "4a", "4b", "4c", "5a", "5b", "11", "12", "13a", "13b"};
  return ids;
}

Table run_figure(const std::string& id, const ScanOptions& scan) {
  const auto& all = builders();
  const auto it = all.find(id);
  if (it == all.end()) {
    std::string known;
    for (const auto& k : figure_ids()) known += (known.empty() ? "" : ", ") + k;
    throw ParameterError("id", "unknown figure id '" + id + "' (known: " + known + ")");
  }
  Table t = it->second(scan);
  t.params.insert(t.params.begin(), {"figure", id});
  return t;
}

}  // namespace bjj::cli
