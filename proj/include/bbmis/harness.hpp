#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbmis/bounds.hpp"
#include "bbmis/solvers.hpp"

namespace bbmis::harness {

enum class SolverKind { exhaustive, bnb_census, bnb_best_first };

const char* solver_name(SolverKind s);
SolverKind parse_solver(std::string_view name);

/// How the edge probability of a cell is derived from its grid value v.
enum class Regime {
  fixed_p,  // p = v
  fixed_k,  // p = v / n
  log_n,    // p = v ln(n) / n
};

/// How node counts are obtained.
///   traverse: run the search and count visited nodes (subject to caps).
///   count:    read them off the prefix independence polynomials, which give
///             identical numbers without visiting the tree (n <= 62).
///   automatic: count where it applies, traverse otherwise. Best-first is
///             always traversed.
enum class Engine { automatic, traverse, count };

struct GridConfig {
  std::vector<std::int64_t> n_list;
  Regime regime = Regime::fixed_k;
  std::vector<double> values;
  std::size_t seeds_per_cell = 100;
  std::uint64_t base_seed = 1;
  std::vector<SolverKind> solvers{SolverKind::exhaustive};
  std::uint64_t node_cap = kDefaultNodeCap;
  std::uint64_t frontier_cap = kDefaultFrontierCap;
  Engine engine = Engine::automatic;
  std::size_t threads = 1;
};

struct ExperimentRecord {
  std::int64_t n = 0;
  double p = 0;
  double k = 0;
  std::uint64_t seed = 0;
  SolverKind solver = SolverKind::exhaustive;
  std::uint64_t nodes = 0;
  std::size_t alpha = 0;
  double elapsed_ms = 0;
  bool truncated = false;
};

double edge_probability(Regime regime, double value, std::int64_t n);

/// Seed of replicate `rep` in cell (n, value_index); independent of solver
/// so every solver sees the same graph.
std::uint64_t cell_seed(std::uint64_t base, std::int64_t n, std::size_t value_index, std::size_t rep);

/// One record per (n, value, seed, solver), ordered by n, value, replicate,
/// then solver in configuration order. Deterministic apart from elapsed_ms.
std::vector<ExperimentRecord> run_grid(const GridConfig& config);

/// Records CSV: n,p,k,seed,solver,nodes,alpha,elapsed_ms,truncated.
/// With with_elapsed = false the elapsed_ms column is left out.
std::string records_to_csv(std::span<const ExperimentRecord> records, bool with_elapsed = true);
std::vector<ExperimentRecord> parse_records_csv(std::string_view text);

struct Sample {
  std::int64_t n;
  double nodes;
};

struct FitResult {
  double base = 1;           // exp(slope) of mean ln(nodes) against n
  double log_intercept = 0;
  double r_squared = 1;
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
  std::size_t sample_count = 0;
  std::size_t distinct_n = 0;
  double base_of_mean = 1;   // same fit on ln(mean nodes)
};

inline constexpr std::size_t kFitMinDistinctN = 4;
inline constexpr std::size_t kFitMinSamplesPerN = 30;

/// Least squares of per-n mean ln(nodes) on n, over n >= min_n. Only n
/// values with at least kFitMinSamplesPerN samples take part; fewer than
/// kFitMinDistinctN such values is a DataError.
FitResult fit_base(std::span<const Sample> samples, std::int64_t min_n = 0);

enum class GroupBy { k, p, none };

struct GroupFit {
  GroupBy by;
  double key;  // k or p of the group (0 for GroupBy::none)
  SolverKind solver;
  FitResult fit;
};

/// Groups non-truncated records by (key, solver) and fits each group that
/// has enough data. Groups without enough data are skipped.
std::vector<GroupFit> fit_groups(std::span<const ExperimentRecord> records, GroupBy by, std::int64_t min_n = 0);

std::string fits_to_csv(std::span<const GroupFit> fits);

enum class CurveKind { lambda, gamma, g_upper, lower };
enum class CurveScale { linear, log };

const char* curve_name(CurveKind kind);
CurveKind parse_curve_kind(std::string_view name);

struct CurveTable {
  CurveKind kind;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  friend bool operator==(const CurveTable&, const CurveTable&) = default;
};

CurveTable compute_curve(CurveKind kind, double k_min, double k_max, std::size_t steps, CurveScale scale);

/// CSV with a header per kind: lambda "k,lambda"; gamma "k,gamma,x_star";
/// g_upper "k,g,base"; lower "k,exponent,base". Values printed with 17
/// significant digits so that parsing recovers them exactly.
std::string curve_to_csv(const CurveTable& table);
CurveTable parse_curve_csv(std::string_view text);

/// Two whitespace-separated columns "k value" (value = second CSV column).
std::string curve_to_data(const CurveTable& table);

std::string emit_curve(CurveKind kind, double k_min, double k_max, std::size_t steps, CurveScale scale);

struct ReportRow {
  GroupBy regime;  // k or p
  double key;
  std::optional<double> exhaustive_base;
  std::optional<double> census_base;
  std::optional<double> g_base;       // e^{g(k)}
  std::optional<double> lower_base;   // e^{lower exponent(k)}
  std::optional<double> gamma;
  std::optional<bool> exhaustive_below_upper;
  std::optional<bool> exhaustive_above_lower;
  std::optional<bool> census_below_gamma;
  std::optional<bool> subexponential;  // fixed-p rows: base <= 1 + tol
  bool pass = true;
};

struct Report {
  double tol;
  std::vector<ReportRow> rows;
};

/// k groups (at least kFitMinDistinctN distinct n) are checked against the
/// analytic envelopes; the remaining records are grouped by p and checked
/// for subexponential growth. Each k row needs a matching analytic point.
Report compare_measured_vs_bounds(std::span<const ExperimentRecord> records,
                                  std::span<const bounds::BoundCurvePoint> analytic, double tol = 0.05,
                                  std::int64_t min_n = 0);

/// Convenience: computes gamma_of_k for every k group first.
Report compare_measured_vs_bounds(std::span<const ExperimentRecord> records, double tol = 0.05,
                                  std::int64_t min_n = 0);

std::string report_to_text(const Report& report);
std::string report_to_csv(const Report& report);

}  // namespace bbmis::harness
