#pragma once

#include "bjj/cli/table.hpp"
#include "bjj/model.hpp"
#include "bjj/scans.hpp"
#include "bjj/timeavg.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bjj::cli {

// Exit codes of the bjj-ed tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    // bad argument or parameter domain
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumeric = 4;

struct EvolveOptions {
  ModelParams params;
  double tmax = 1000.0;
  double dt = 0.1;
  bool full = false;  ///< append p0..pN columns
};
Table run_evolve(const EvolveOptions& opts);

struct AverageOptions {
  ModelParams params;
  LogBase xi_base = LogBase::natural;
};
Table run_average(const AverageOptions& opts);

struct ScanCommandOptions {
  ModelParams fixed;
  Axis vary = Axis::J;
  double min = 0.0, max = 1.0;
  int steps = 2;
  std::optional<Axis> vary2;
  double min2 = 0.0, max2 = 1.0;
  int steps2 = 2;
  ScanOptions scan;
};
Table run_scan(const ScanCommandOptions& opts);

struct CriticalCommandOptions {
  CriticalMethod mode = CriticalMethod::argmax_quadratic;
  ModelParams fixed;
  int nmin = 4, nmax = 80;           // argmax
  double jmin = 0.0, jmax = 0.0;     // knee; 0 picks 0.02 N .. 0.6 N
  int steps = 60;                    // knee
  ScanOptions scan;
};
struct CriticalOutput {
  CriticalEstimate estimate;
  Table table;
  std::string summary;  ///< "u_c=<value>±<half bracket> ..."
};
CriticalOutput run_critical(const CriticalCommandOptions& opts);

struct ScalingCommandOptions {
  double u = 1.0;
  int nmin = 10, nmax = 100, nstep = 10;
  ModelParams fixed;  ///< U (fix-U) or J (fix-J) is held
  ScanOptions scan;
};
struct ScalingOutput {
  ScalingFit fit;
  Table table;
  std::string summary;  ///< "preferred=<log|linear> ..."
};
ScalingOutput run_scaling(const ScalingCommandOptions& opts);

struct MaxElemsOptions {
  ModelParams params;
  double tmax = 2000.0;
  double dt = 0.1;
};
Table run_maxelems(const MaxElemsOptions& opts);

struct OracleCommandOptions {
  ModelParams params;
  double t = 1.0;
  int random = 0;  ///< if > 0: that many random (J, U, N) checks instead of one
  unsigned seed = 1;
};
Table run_oracle(const OracleCommandOptions& opts);

/// Figure ids accepted by `figure --id`.
const std::vector<std::string>& figure_ids();
/// Throws ParameterError (field "id") for an unknown id.
Table run_figure(const std::string& id, const ScanOptions& scan);

/// Full command-line entry point (args exclude the program name).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bjj::cli
