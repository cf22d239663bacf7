#include "bjj/cli/commands.hpp"

#include "bjj/cli/config.hpp"
#include "bjj/dynamics.hpp"
#include "bjj/errors.hpp"
#include "bjj/numeric.hpp"
#include "bjj/oracle.hpp"
#include "bjj/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <random>
#include <thread>

namespace bjj::cli {

namespace {

void add_model_params(Table& t, const ModelParams& p) {
  t.add_param("N", p.N);
  t.add_param("J", p.J);
  t.add_param("U", p.U);
  t.add_param("s", p.s);
  t.add_param("alpha", p.alpha);
}

std::string fixed3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string convention_name(UConvention c) { return c == UConvention::fix_J ? "fix-J" : "fix-U"; }

std::vector<double> axis_points(Axis axis, double lo, double hi, int steps) {
  if (steps < 2) throw ParameterError("steps", "a scan needs steps >= 2");
  if (!(hi > lo)) throw ParameterError("max", "scan range needs max > min");
  std::vector<double> v = linspace(lo, hi, static_cast<std::size_t>(steps));
  if (axis == Axis::N)
    for (double& x : v) x = std::round(x);
  return v;
}

}  // namespace

Table run_evolve(const EvolveOptions& opts) {
  opts.params.validate();
  const std::vector<double> grid = time_grid(opts.tmax, opts.dt);

  Table table;
  add_model_params(table, opts.params);
  table.add_param("tmax", opts.tmax);
  table.add_param("dt", opts.dt);
  table.columns = {"t", "S"};
  if (opts.full)
    for (int n = 0; n <= opts.params.N; ++n) table.columns.push_back("p" + std::to_string(n));
  table.rows.resize(grid.size());

  if (!opts.full) {
    const EntropyTimeSeries series = evolve_series(opts.params, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) table.rows[i] = {series.times[i], series.entropy[i]};
    return table;
  }
  const Spectrum spec = diagonalize(build_hamiltonian(opts.params), opts.params.eig_tol);
  const DensityEvaluator eval(spec, opts.params.trace_tol);
  eval.for_each(grid, [&](std::size_t i, std::span<const double> p) {
    auto& row = table.rows[i];
    row.reserve(p.size() + 2);
    row = {grid[i], renyi_entropy(p, opts.params.alpha)};
    row.insert(row.end(), p.begin(), p.end());
  });
  return table;
}

Table run_average(const AverageOptions& opts) {
  const ModelParams& p = opts.params;
  p.validate();
  const Spectrum spec = diagonalize(build_hamiltonian(p), p.eig_tol);
  const AveragedDensity avg = averaged_reduced_density(spec, p.s, p.trace_tol);
  const EntanglementSpectrumResult es = entanglement_spectrum(avg, opts.xi_base);
  const double entropy = renyi_entropy(avg.p, p.alpha);

  Table table;
  add_model_params(table, p);
  table.add_param("xi-base", opts.xi_base == LogBase::two ? "2" : "e");
  table.columns = {"n", "p_avg", "xi", "clamped"};
  for (std::size_t n = 0; n < avg.p.size(); ++n)
    table.rows.push_back({static_cast<double>(n), avg.p[n], es.xi[n], es.clamped[n] ? 1.0 : 0.0});
  const std::string u = p.J > 0.0 ? format_number(characteristic_u(p)) : "undefined";
  table.trailing.push_back("S=" + format_number(entropy) + " u=" + u);
  return table;
}

Table run_scan(const ScanCommandOptions& opts) {
  Table table;
  add_model_params(table, opts.fixed);
  table.add_param("vary", std::string(to_string(opts.vary)));
  table.add_param("min", opts.min);
  table.add_param("max", opts.max);
  table.add_param("steps", opts.steps);
  if (opts.vary2) {
    table.add_param("vary2", std::string(to_string(*opts.vary2)));
    table.add_param("min2", opts.min2);
    table.add_param("max2", opts.max2);
    table.add_param("steps2", opts.steps2);
  }
  if (opts.vary == Axis::u || opts.vary2 == Axis::u)
    table.add_param("u-convention", convention_name(opts.scan.convention));

  const std::vector<double> xs = axis_points(opts.vary, opts.min, opts.max, opts.steps);
  if (!opts.vary2) {
    const ScanResult r = scan_values(opts.vary, xs, opts.fixed, opts.scan);
    table.columns = {"axis", "S"};
    for (std::size_t i = 0; i < r.axis.size(); ++i) table.rows.push_back({r.axis[i], r.S[i]});
    table.timestamp = r.provenance.timestamp;
    return table;
  }
  const std::vector<double> ys = axis_points(*opts.vary2, opts.min2, opts.max2, opts.steps2);
  const ScanGrid g = scan_2d(opts.vary, xs, *opts.vary2, ys, opts.fixed, opts.scan);
  table.columns = {"x", "y", "S"};
  for (std::size_t i = 0; i < g.x.size(); ++i)
    for (std::size_t j = 0; j < g.y.size(); ++j) table.rows.push_back({g.x[i], g.y[j], g.at(i, j)});
  table.timestamp = g.provenance.timestamp;
  return table;
}

CriticalOutput run_critical(const CriticalCommandOptions& opts) {
  CriticalOutput out;
  Table& table = out.table;
  add_model_params(table, opts.fixed);
  table.add_param("mode", std::string(to_string(opts.mode)));

  if (opts.mode == CriticalMethod::argmax_quadratic) {
    table.add_param("nmin", opts.nmin);
    table.add_param("nmax", opts.nmax);
    out.estimate = locate_critical_argmax(opts.fixed, opts.nmin, opts.nmax, opts.scan);
    table.columns = {"N", "u", "S"};
  } else {
    const double jmin = opts.jmin > 0.0 ? opts.jmin : 0.02 * opts.fixed.N;
    const double jmax = opts.jmax > 0.0 ? opts.jmax : 0.6 * opts.fixed.N;
    table.add_param("jmin", jmin);
    table.add_param("jmax", jmax);
    table.add_param("steps", opts.steps);
    out.estimate = locate_critical_knee(opts.fixed, jmin, jmax, opts.steps, opts.scan);
    table.columns = {"J", "u", "S"};
  }
  const CriticalEstimate& est = out.estimate;
  for (std::size_t i = 0; i < est.curve.axis.size(); ++i)
    table.rows.push_back({est.curve.axis[i], est.u_axis[i], est.curve.S[i]});

  const double half = 0.5 * (est.bracket.second - est.bracket.first);
  out.summary = "u_c=" + fixed3(est.u_c) + "±" + fixed3(half) + " method=" +
                std::string(to_string(est.method)) + " bracket=[" + fixed3(est.bracket.first) + "," +
                fixed3(est.bracket.second) + "]";
  table.trailing.push_back("u_c=" + format_number(est.u_c) + " u_lo=" + format_number(est.bracket.first) +
                           " u_hi=" + format_number(est.bracket.second));
  if (est.j_knee) {
    const double ratio = *est.j_knee / opts.fixed.N;
    out.summary += " J_knee/N=" + fixed3(ratio);
    table.trailing.push_back("J_knee=" + format_number(*est.j_knee) + " J_knee_over_N=" + format_number(ratio));
  }
  return out;
}

ScalingOutput run_scaling(const ScalingCommandOptions& opts) {
  if (opts.nstep < 1) throw ParameterError("nstep", "nstep must be >= 1");
  if (opts.nmin < 1 || opts.nmax <= opts.nmin) throw ParameterError("nmin", "scaling needs 1 <= nmin < nmax");
  std::vector<int> ns;
  for (int n = opts.nmin; n <= opts.nmax; n += opts.nstep) ns.push_back(n);

  ScalingOutput out;
  NormalizedScan scan;
  out.fit = fit_scaling(opts.u, ns, opts.fixed, opts.scan, &scan);

  Table& table = out.table;
  table.add_param("u", opts.u);
  table.add_param("u-convention", convention_name(opts.scan.convention));
  if (opts.scan.convention == UConvention::fix_U)
    table.add_param("U", opts.fixed.U);
  else
    table.add_param("J", opts.fixed.J);
  table.add_param("s", opts.fixed.s);
  table.add_param("alpha", opts.fixed.alpha);
  table.add_param("nmin", opts.nmin);
  table.add_param("nmax", opts.nmax);
  table.add_param("nstep", opts.nstep);
  table.columns = {"N", "S", "S_norm"};
  for (std::size_t i = 0; i < ns.size(); ++i)
    table.rows.push_back({scan.raw.axis[i], scan.raw.S[i], scan.normalized[i]});

  const auto& lg = out.fit.model_log;
  const auto& ln = out.fit.model_lin;
  table.trailing.push_back("preferred=" + std::string(to_string(out.fit.preferred)));
  table.trailing.push_back("log: a=" + format_number(lg.intercept) + " b=" + format_number(lg.slope) +
                           " rms=" + format_number(lg.rms));
  table.trailing.push_back("linear: a=" + format_number(ln.intercept) + " b=" + format_number(ln.slope) +
                           " rms=" + format_number(ln.rms));
  out.summary = "preferred=" + std::string(to_string(out.fit.preferred)) + " rms_log=" +
                format_number(lg.rms) + " rms_linear=" + format_number(ln.rms);
  return out;
}

Table run_maxelems(const MaxElemsOptions& opts) {
  const MaxElementTrace trace = track_max_elements(opts.params, opts.tmax, opts.dt);
  Table table;
  add_model_params(table, opts.params);
  table.add_param("tmax", opts.tmax);
  table.add_param("dt", opts.dt);
  table.columns = {"n", "max_p"};
  for (std::size_t n = 0; n < trace.per_n_max.size(); ++n)
    table.rows.push_back({static_cast<double>(n), trace.per_n_max[n]});
  table.trailing.push_back("first=" + std::to_string(trace.first.index) + ":" + format_number(trace.first.value) +
                           " second=" + std::to_string(trace.second.index) + ":" +
                           format_number(trace.second.value));
  return table;
}

Table run_oracle(const OracleCommandOptions& opts) {
  auto compare = [](const ModelParams& p, double t, double& density_diff, double& avg_diff,
                    std::vector<std::vector<double>>* rows) {
    const Spectrum spec = diagonalize(build_hamiltonian(p), p.eig_tol);
    const auto spectral = reduced_density_at(spec, t, p.trace_tol).p;
    const auto cfg = oracle::IntegratorConfig::for_accuracy(p, t, 1e-10);
    const auto integrated = oracle::integrate_state(p, t, cfg).p;
    const auto pair_sum = averaged_reduced_density(spec, p.s, p.trace_tol).p;
    const auto quad = oracle::quadrature_average(p, p.s, 40.0 / p.s).average.p;
    density_diff = avg_diff = 0.0;
    for (std::size_t n = 0; n < spectral.size(); ++n) {
      density_diff = std::max(density_diff, std::abs(spectral[n] - integrated[n]));
      avg_diff = std::max(avg_diff, std::abs(pair_sum[n] - quad[n]));
      if (rows)
        rows->push_back({static_cast<double>(n), spectral[n], integrated[n], pair_sum[n], quad[n]});
    }
  };

  Table table;
  if (opts.random <= 0) {
    add_model_params(table, opts.params);
    table.add_param("t", opts.t);
    table.columns = {"n", "p_spectral", "p_integrator", "p_avg_pairsum", "p_avg_quadrature"};
    double dd = 0, ad = 0;
    compare(opts.params, opts.t, dd, ad, &table.rows);
    table.trailing.push_back("max_density_diff=" + format_number(dd) + " max_average_diff=" + format_number(ad));
    return table;
  }
  table.add_param("random", opts.random);
  table.add_param("seed", static_cast<double>(opts.seed));
  table.columns = {"trial", "N", "J", "U", "t", "max_density_diff", "max_average_diff"};
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> coupling(0.0, 2.0);
  std::uniform_int_distribution<int> bosons(2, 8);
  std::uniform_real_distribution<double> time(0.0, 50.0);
  for (int trial = 0; trial < opts.random; ++trial) {
    ModelParams p = opts.params;
    p.N = bosons(rng);
    p.J = 2.0 - coupling(rng);  // (0, 2]
    p.U = 2.0 - coupling(rng);
    const double t = time(rng);
    double dd = 0, ad = 0;
    compare(p, t, dd, ad, nullptr);
    table.rows.push_back({static_cast<double>(trial), static_cast<double>(p.N), p.J, p.U, t, dd, ad});
  }
  return table;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct OutputFlags {
  std::string out;
  std::string format = "csv";
  bool stamp = false;
};

void add_model_options(CLI::App* sub, ModelParams& p) {
  sub->add_option("--N", p.N, "Number of bosons")->capture_default_str();
  sub->add_option("--J", p.J, "Tunneling rate")->capture_default_str();
  sub->add_option("--U", p.U, "Interaction strength")->capture_default_str();
  sub->add_option("--s", p.s, "Observation-time averaging rate")->capture_default_str();
  sub->add_option("--alpha", p.alpha, "Renyi order")->capture_default_str();
  sub->add_option("--eig-tol", p.eig_tol, "Relative eigen-residual tolerance")->capture_default_str();
  sub->add_option("--trace-tol", p.trace_tol, "Probability-sum tolerance")->capture_default_str();
}

void add_output_options(CLI::App* sub, OutputFlags& o) {
  sub->add_option("--out", o.out, "Output file (default: stdout)");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_flag("--stamp", o.stamp, "Write a creation timestamp into the header");
}

void add_workers(CLI::App* sub, ScanOptions& scan, std::string& convention) {
  sub->add_option("--workers", scan.workers, "Concurrent scan points (default: $BJJ_WORKERS or all cores)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--u-convention", convention, "Constant-u realization")
      ->check(CLI::IsMember({"fix-U", "fix-J"}))
      ->capture_default_str();
}

UConvention parse_convention(const std::string& name) {
  return name == "fix-J" ? UConvention::fix_J : UConvention::fix_U;
}

// Default worker count: $BJJ_WORKERS if set, otherwise the core count.
unsigned default_workers() {
  const char* env = std::getenv("BJJ_WORKERS");
  if (env == nullptr || *env == '\0') return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096)
    throw ParameterError("workers", "BJJ_WORKERS must be a positive integer (got '" + std::string(env) + "')");
  return static_cast<unsigned>(v);
}

void emit(const Table& table, const OutputFlags& o, std::ostream& out) {
  Table t = table;
  if (!o.stamp) t.timestamp.reset();
  else if (!t.timestamp) t.timestamp = make_provenance().timestamp;
  write_table_to(o.out, out, t, parse_format(o.format));
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact diagonalization of the two-site Bose-Hubbard model (bosonic Josephson junction)",
               "bjj-ed"};
  app.require_subcommand(1);
  app.footer("Every subcommand also accepts --config FILE (key = value lines); explicit flags override it.\n"
             "Exit codes: 0 ok, 2 usage or parameter domain, 3 I/O, 4 numeric failure.");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  unsigned hw = 1;
  try {
    hw = default_workers();
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  ModelParams base;
  base.N = 100;
  base.J = 1.0;
  base.U = 0.01;

  EvolveOptions evolve_opts;
  evolve_opts.params = base;
  OutputFlags evolve_out;
  auto* evolve = app.add_subcommand("evolve", "Renyi entropy S(t) of the left well after starting in |0,N>");
  add_model_options(evolve, evolve_opts.params);
  evolve->add_option("--tmax", evolve_opts.tmax, "Last time point")->capture_default_str();
  evolve->add_option("--dt", evolve_opts.dt, "Time step")->capture_default_str();
  evolve->add_flag("--full", evolve_opts.full, "Also write p0..pN");
  add_output_options(evolve, evolve_out);

  AverageOptions average_opts;
  average_opts.params = base;
  std::string xi_base = "e";
  OutputFlags average_out;
  auto* average = app.add_subcommand("average", "Observation-time-averaged density and entanglement spectrum");
  add_model_options(average, average_opts.params);
  average->add_option("--xi-base", xi_base, "Logarithm base of xi")->check(CLI::IsMember({"e", "2"}))->capture_default_str();
  add_output_options(average, average_out);

  ScanCommandOptions scan_opts;
  scan_opts.fixed = base;
  scan_opts.scan.workers = hw;
  std::string vary = "J", vary2;
  std::string scan_conv = "fix-U";
  OutputFlags scan_out;
  auto* scan = app.add_subcommand("scan", "Averaged entropy along one or two parameter axes");
  add_model_options(scan, scan_opts.fixed);
  scan->add_option("--vary", vary, "Axis: J, U, N or u")->check(CLI::IsMember({"J", "U", "N", "u"}))->capture_default_str();
  scan->add_option("--min", scan_opts.min, "Axis start")->required();
  scan->add_option("--max", scan_opts.max, "Axis end")->required();
  scan->add_option("--steps", scan_opts.steps, "Axis points")->required();
  scan->add_option("--vary2", vary2, "Second axis (row-major x,y grid)")->check(CLI::IsMember({"J", "U", "N", "u"}));
  scan->add_option("--min2", scan_opts.min2, "Second axis start");
  scan->add_option("--max2", scan_opts.max2, "Second axis end");
  scan->add_option("--steps2", scan_opts.steps2, "Second axis points");
  add_workers(scan, scan_opts.scan, scan_conv);
  add_output_options(scan, scan_out);

  CriticalCommandOptions crit_opts;
  crit_opts.fixed = base;
  crit_opts.fixed.U = 0.4;
  crit_opts.fixed.J = 3.0;
  crit_opts.fixed.N = 60;
  crit_opts.scan.workers = hw;
  std::string mode = "argmax", crit_conv = "fix-U";
  OutputFlags crit_out;
  auto* critical = app.add_subcommand("critical", "Locate the transition u_c from an entropy scan");
  add_model_options(critical, crit_opts.fixed);
  critical->add_option("--mode", mode, "argmax (scan N at fixed U, J) or knee (scan J at fixed U, N)")
      ->check(CLI::IsMember({"argmax", "knee"}))
      ->capture_default_str();
  critical->add_option("--nmin", crit_opts.nmin, "argmax: smallest N")->capture_default_str();
  critical->add_option("--nmax", crit_opts.nmax, "argmax: largest N")->capture_default_str();
  critical->add_option("--jmin", crit_opts.jmin, "knee: smallest J (default 0.02 N)");
  critical->add_option("--jmax", crit_opts.jmax, "knee: largest J (default 0.6 N)");
  critical->add_option("--steps", crit_opts.steps, "knee: J points")->capture_default_str();
  add_workers(critical, crit_opts.scan, crit_conv);
  add_output_options(critical, crit_out);

  ScalingCommandOptions scaling_opts;
  scaling_opts.fixed = base;
  scaling_opts.fixed.U = 1.0;
  scaling_opts.scan.workers = hw;
  std::string scaling_conv = "fix-U";
  OutputFlags scaling_out;
  auto* scaling = app.add_subcommand("scaling", "Normalized entropy vs N at constant u with log/linear fits");
  scaling->add_option("--u", scaling_opts.u, "Characteristic parameter U N / J")->capture_default_str();
  scaling->add_option("--nmin", scaling_opts.nmin, "Smallest N")->capture_default_str();
  scaling->add_option("--nmax", scaling_opts.nmax, "Largest N")->capture_default_str();
  scaling->add_option("--nstep", scaling_opts.nstep, "N increment")->capture_default_str();
  scaling->add_option("--U", scaling_opts.fixed.U, "Held U (fix-U)")->capture_default_str();
  scaling->add_option("--J", scaling_opts.fixed.J, "Held J (fix-J)")->capture_default_str();
  scaling->add_option("--s", scaling_opts.fixed.s, "Observation-time averaging rate")->capture_default_str();
  scaling->add_option("--alpha", scaling_opts.fixed.alpha, "Renyi order")->capture_default_str();
  add_workers(scaling, scaling_opts.scan, scaling_conv);
  add_output_options(scaling, scaling_out);

  MaxElemsOptions max_opts;
  max_opts.params = base;
  OutputFlags max_out;
  auto* maxelems = app.add_subcommand("maxelems", "Per-element maxima of p_n(t) over [0, tmax]");
  add_model_options(maxelems, max_opts.params);
  maxelems->add_option("--tmax", max_opts.tmax, "Last time point")->capture_default_str();
  maxelems->add_option("--dt", max_opts.dt, "Time step")->capture_default_str();
  add_output_options(maxelems, max_out);

  std::string figure_id, out_dir = ".";
  OutputFlags figure_out;
  ScanOptions figure_scan;
  figure_scan.workers = hw;
  std::string figure_conv = "fix-U";
  auto* figure = app.add_subcommand("figure", "Write the data behind one figure preset to fig<id>.csv");
  figure->add_option("--id", figure_id, "Figure id")->required();
  figure->add_option("--out-dir", out_dir, "Directory for fig<id>.<format>")->capture_default_str();
  figure->add_option("--format", figure_out.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  figure->add_flag("--stamp", figure_out.stamp, "Write a creation timestamp into the header");
  add_workers(figure, figure_scan, figure_conv);

  OracleCommandOptions oracle_opts;
  oracle_opts.params = base;
  oracle_opts.params.N = 4;
  oracle_opts.params.U = 1.0;
  OutputFlags oracle_out;
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare against the brute-force references");
  oracle_cmd->group("");  // debugging aid, not listed in --help
  add_model_options(oracle_cmd, oracle_opts.params);
  oracle_cmd->add_option("--t", oracle_opts.t, "Time for the density comparison")->capture_default_str();
  oracle_cmd->add_option("--random", oracle_opts.random, "Number of random parameter draws");
  oracle_cmd->add_option("--seed", oracle_opts.seed, "Random seed")->capture_default_str();
  add_output_options(oracle_cmd, oracle_out);

  try {
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }

  try {
    if (evolve->parsed()) {
      emit(run_evolve(evolve_opts), evolve_out, out);
    } else if (average->parsed()) {
      average_opts.xi_base = xi_base == "2" ? LogBase::two : LogBase::natural;
      emit(run_average(average_opts), average_out, out);
    } else if (scan->parsed()) {
      scan_opts.vary = parse_axis(vary);
      if (!vary2.empty()) scan_opts.vary2 = parse_axis(vary2);
      scan_opts.scan.convention = parse_convention(scan_conv);
      emit(run_scan(scan_opts), scan_out, out);
    } else if (critical->parsed()) {
      crit_opts.mode = mode == "knee" ? CriticalMethod::knee : CriticalMethod::argmax_quadratic;
      crit_opts.scan.convention = parse_convention(crit_conv);
      const CriticalOutput res = run_critical(crit_opts);
      if (!crit_out.out.empty() && crit_out.out != "-") emit(res.table, crit_out, out);
      out << res.summary << '\n';
    } else if (scaling->parsed()) {
      scaling_opts.scan.convention = parse_convention(scaling_conv);
      const ScalingOutput res = run_scaling(scaling_opts);
      if (!scaling_out.out.empty() && scaling_out.out != "-") emit(res.table, scaling_out, out);
      out << res.summary << '\n';
    } else if (maxelems->parsed()) {
      emit(run_maxelems(max_opts), max_out, out);
    } else if (figure->parsed()) {
      figure_scan.convention = parse_convention(figure_conv);
      const Table table = run_figure(figure_id, figure_scan);
      const std::string path =
          (std::filesystem::path(out_dir) / ("fig" + figure_id + "." + figure_out.format)).string();
      figure_out.out = path;
      emit(table, figure_out, out);
      out << path << '\n';
    } else if (oracle_cmd->parsed()) {
      emit(run_oracle(oracle_opts), oracle_out, out);
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace bjj::cli
