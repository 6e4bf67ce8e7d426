#include "bbmis/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "bbmis/error.hpp"
#include "bbmis/graph.hpp"
#include "bbmis/tree_count.hpp"

namespace bbmis::harness {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return RngStream(h ^ (v * 0xD1B54A32D192ED03ULL)).next(); }

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

template <class T>
T parse_number(std::string_view s, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("malformed number '" + std::string(s) + "'", line);
  return value;
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void validate(const GridConfig& c) {
  if (c.n_list.empty()) throw ConfigError("run_grid: empty n list");
  if (c.values.empty()) throw ConfigError("run_grid: empty k/p list");
  if (c.solvers.empty()) throw ConfigError("run_grid: empty solver list");
  if (c.seeds_per_cell == 0) throw ConfigError("run_grid: seeds per cell must be positive");
  if (c.node_cap == 0 || c.frontier_cap == 0) throw ConfigError("run_grid: caps must be positive");
  if (c.threads == 0) throw ConfigError("run_grid: thread count must be positive");
  for (auto n : c.n_list)
    if (n < 1) throw ConfigError("run_grid: n must be positive");
  for (auto n : c.n_list)
    for (double v : c.values) {
      const double p = edge_probability(c.regime, v, n);
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("run_grid: edge probability outside [0, 1] at n=" +
                                                    std::to_string(n));
    }
}

struct Cell {
  std::int64_t n;
  std::size_t value_index;
  std::size_t rep;
};

std::vector<ExperimentRecord> run_cell(const GridConfig& c, const Cell& cell) {
  const double p = edge_probability(c.regime, c.values[cell.value_index], cell.n);
  const std::uint64_t seed = cell_seed(c.base_seed, cell.n, cell.value_index, cell.rep);
  const Graph g = gen_gnp(static_cast<std::size_t>(cell.n), p, seed);
  const auto n = static_cast<std::size_t>(cell.n);
  const bool countable = n <= kProfileMaxOrder && c.engine != Engine::traverse;
  if (c.engine == Engine::count && !countable)
    throw ConfigError("run_grid: counting engine requires n <= " + std::to_string(kProfileMaxOrder));

  std::optional<SearchTreeProfile> profile;
  double profile_ms = 0;
  auto get_profile = [&]() -> const SearchTreeProfile& {
    if (!profile) {
      const auto start = Clock::now();
      profile = profile_search_tree(g);
      profile_ms = ms_since(start);
    }
    return *profile;
  };

  std::vector<ExperimentRecord> out;
  for (SolverKind solver : c.solvers) {
    ExperimentRecord r;
    r.n = cell.n;
    r.p = p;
    r.k = static_cast<double>(cell.n) * p;
    r.seed = seed;
    r.solver = solver;
    const auto start = Clock::now();
    try {
      switch (solver) {
        case SolverKind::exhaustive:
          if (countable) {
            const auto& prof = get_profile();
            r.nodes = prof.exhaustive_nodes();
            r.alpha = prof.alpha();
          } else {
            const auto res = exhaustive_search(g, c.node_cap);
            r.nodes = res.nodes_expanded;
            r.alpha = res.alpha;
          }
          break;
        case SolverKind::bnb_census:
          if (countable) {
            const auto& prof = get_profile();
            r.alpha = prof.alpha();
            r.nodes = prof.census(r.alpha);
          } else {
            r.alpha = n <= kProfileMaxOrder ? get_profile().alpha() : bnb_best_first(g, c.frontier_cap).alpha;
            r.nodes = bnb_census(g, r.alpha, c.node_cap);
          }
          break;
        case SolverKind::bnb_best_first: {
          const auto res = bnb_best_first(g, c.frontier_cap);
          r.nodes = res.nodes_expanded;
          r.alpha = res.alpha;
          break;
        }
      }
    } catch (const ResourceCapError& e) {
      r.truncated = true;
      r.nodes = e.limit();
      r.alpha = 0;
    }
    r.elapsed_ms = ms_since(start);
    out.push_back(r);
  }
  return out;
}

}  // namespace

const char* solver_name(SolverKind s) {
  switch (s) {
    case SolverKind::exhaustive: return "exhaustive";
    case SolverKind::bnb_census: return "bnb_census";
    case SolverKind::bnb_best_first: return "bnb_best_first";
  }
  return "?";
}

SolverKind parse_solver(std::string_view name) {
  if (name == "exhaustive") return SolverKind::exhaustive;
  if (name == "bnb_census" || name == "census") return SolverKind::bnb_census;
  if (name == "bnb_best_first" || name == "bnb") return SolverKind::bnb_best_first;
  throw ConfigError("unknown solver '" + std::string(name) + "'");
}

double edge_probability(Regime regime, double value, std::int64_t n) {
  const auto dn = static_cast<double>(n);
  switch (regime) {
    case Regime::fixed_p: return value;
    case Regime::fixed_k: return value / dn;
    case Regime::log_n: return n < 2 ? 0.0 : value * std::log(dn) / dn;
  }
  return value;
}

std::uint64_t cell_seed(std::uint64_t base, std::int64_t n, std::size_t value_index, std::size_t rep) {
  std::uint64_t h = mix(base, static_cast<std::uint64_t>(n));
  h = mix(h, value_index);
  return mix(h, rep);
}

std::vector<ExperimentRecord> run_grid(const GridConfig& config) {
  validate(config);
  std::vector<Cell> cells;
  for (auto n : config.n_list)
    for (std::size_t vi = 0; vi < config.values.size(); ++vi)
      for (std::size_t rep = 0; rep < config.seeds_per_cell; ++rep) cells.push_back({n, vi, rep});

  std::vector<std::vector<ExperimentRecord>> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        results[i] = run_cell(config, cells[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cells.size();
        return;
      }
    }
  };

  const std::size_t threads = std::min(config.threads, cells.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ExperimentRecord> out;
  out.reserve(cells.size() * config.solvers.size());
  for (auto& batch : results) out.insert(out.end(), batch.begin(), batch.end());
  return out;
}

std::string records_to_csv(std::span<const ExperimentRecord> records, bool with_elapsed) {
  std::string out = with_elapsed ? "n,p,k,seed,solver,nodes,alpha,elapsed_ms,truncated\n"
                                 : "n,p,k,seed,solver,nodes,alpha,truncated\n";
  for (const auto& r : records) {
    out += std::to_string(r.n) + ',' + fmt("%.10g", r.p) + ',' + fmt("%.10g", r.k) + ',' + std::to_string(r.seed) +
           ',' + solver_name(r.solver) + ',' + std::to_string(r.nodes) + ',' + std::to_string(r.alpha) + ',';
    if (with_elapsed) out += fmt("%.3f", r.elapsed_ms) + ',';
    out += r.truncated ? "1\n" : "0\n";
  }
  return out;
}

std::vector<ExperimentRecord> parse_records_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw ParseError("records CSV: missing header", 1);
  const auto header = split(lines[0], ',');
  const std::vector<std::string> full{"n", "p", "k", "seed", "solver", "nodes", "alpha", "elapsed_ms", "truncated"};
  std::vector<std::string> cols(header.begin(), header.end());
  const bool with_elapsed = cols == full;
  std::vector<std::string> short_form = full;
  short_form.erase(short_form.begin() + 7);
  if (!with_elapsed && cols != short_form) throw ParseError("records CSV: unexpected header", 1);

  std::vector<ExperimentRecord> out;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li] == lines[0]) continue;  // concatenated files repeat the header
    const auto f = split(lines[li], ',');
    if (f.size() != cols.size()) throw ParseError("records CSV: wrong field count", li + 1);
    ExperimentRecord r;
    r.n = parse_number<std::int64_t>(f[0], li + 1);
    r.p = parse_number<double>(f[1], li + 1);
    r.k = parse_number<double>(f[2], li + 1);
    r.seed = parse_number<std::uint64_t>(f[3], li + 1);
    try {
      r.solver = parse_solver(f[4]);
    } catch (const ConfigError&) {
      throw ParseError("records CSV: unknown solver '" + std::string(f[4]) + "'", li + 1);
    }
    r.nodes = parse_number<std::uint64_t>(f[5], li + 1);
    r.alpha = parse_number<std::size_t>(f[6], li + 1);
    std::size_t next = 7;
    if (with_elapsed) r.elapsed_ms = parse_number<double>(f[next++], li + 1);
    const auto t = f[next];
    if (t != "0" && t != "1") throw ParseError("records CSV: truncated must be 0 or 1", li + 1);
    r.truncated = t == "1";
    out.push_back(r);
  }
  return out;
}

FitResult fit_base(std::span<const Sample> samples, std::int64_t min_n) {
  struct Acc {
    std::size_t count = 0;
    double sum_log = 0;
    double sum = 0;
  };
  std::map<std::int64_t, Acc> by_n;
  for (const auto& s : samples) {
    if (s.n < min_n) continue;
    if (!(s.nodes > 0) || !std::isfinite(s.nodes)) throw DataError("fit_base: node counts must be positive");
    auto& a = by_n[s.n];
    ++a.count;
    a.sum_log += std::log(s.nodes);
    a.sum += s.nodes;
  }
  std::vector<double> xs, ys, ys_mean;
  FitResult r;
  for (const auto& [n, a] : by_n) {
    if (a.count < kFitMinSamplesPerN) continue;
    xs.push_back(static_cast<double>(n));
    ys.push_back(a.sum_log / static_cast<double>(a.count));
    ys_mean.push_back(std::log(a.sum / static_cast<double>(a.count)));
    r.sample_count += a.count;
    if (r.distinct_n == 0) r.n_min = n;
    r.n_max = n;
    ++r.distinct_n;
  }
  if (r.distinct_n < kFitMinDistinctN)
    throw DataError("fit_base: need at least " + std::to_string(kFitMinDistinctN) + " distinct n with " +
                    std::to_string(kFitMinSamplesPerN) + " samples each, have " + std::to_string(r.distinct_n));

  auto line = [&](const std::vector<double>& y, double& slope, double& intercept, double& r2) {
    const double m = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (y[i] - my);
      syy += (y[i] - my) * (y[i] - my);
    }
    slope = sxy / sxx;
    intercept = my - slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double e = y[i] - (intercept + slope * xs[i]);
      ss_res += e * e;
    }
    // Rounding in ss_res can exceed a vanishing syy; constant data is a perfect fit.
    r2 = syy <= 1e-24 * std::max(1.0, my * my) ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  };

  double slope = 0, r2 = 0, slope_mean = 0, intercept_mean = 0, r2_mean = 0;
  line(ys, slope, r.log_intercept, r2);
  line(ys_mean, slope_mean, intercept_mean, r2_mean);
  r.base = std::exp(slope);
  r.r_squared = r2;
  r.base_of_mean = std::exp(slope_mean);
  return r;
}

namespace {

double group_key(const ExperimentRecord& r, GroupBy by) {
  // Keys are compared at the precision the CSV stores them with.
  switch (by) {
    case GroupBy::k: return std::stod(fmt("%.6g", r.k));
    case GroupBy::p: return std::stod(fmt("%.10g", r.p));
    case GroupBy::none: return 0.0;
  }
  return 0.0;
}

std::optional<FitResult> try_fit(std::span<const ExperimentRecord> records, std::int64_t min_n) {
  std::vector<Sample> samples;
  for (const auto& r : records)
    if (!r.truncated) samples.push_back({r.n, static_cast<double>(r.nodes)});
  try {
    return fit_base(samples, min_n);
  } catch (const DataError&) {
    return std::nullopt;
  }
}

using GroupMap = std::map<std::pair<double, int>, std::vector<ExperimentRecord>>;

GroupMap group_records(std::span<const ExperimentRecord> records, GroupBy by) {
  GroupMap groups;
  for (const auto& r : records) groups[{group_key(r, by), static_cast<int>(r.solver)}].push_back(r);
  return groups;
}

std::size_t distinct_n(const std::vector<ExperimentRecord>& rs) {
  std::set<std::int64_t> ns;
  for (const auto& r : rs) ns.insert(r.n);
  return ns.size();
}

}  // namespace

std::vector<GroupFit> fit_groups(std::span<const ExperimentRecord> records, GroupBy by, std::int64_t min_n) {
  std::vector<GroupFit> out;
  for (const auto& [key, rs] : group_records(records, by))
    if (auto fit = try_fit(rs, min_n)) out.push_back({by, key.first, static_cast<SolverKind>(key.second), *fit});
  return out;
}

std::string fits_to_csv(std::span<const GroupFit> fits) {
  std::string out = "group,key,solver,base,log_intercept,r_squared,n_min,n_max,sample_count,base_of_mean\n";
  for (const auto& f : fits) {
    out += std::string(f.by == GroupBy::k ? "k" : f.by == GroupBy::p ? "p" : "all") + ',' + fmt("%.10g", f.key) +
           ',' + solver_name(f.solver) + ',' + fmt("%.10g", f.fit.base) + ',' + fmt("%.10g", f.fit.log_intercept) +
           ',' + fmt("%.10g", f.fit.r_squared) + ',' + std::to_string(f.fit.n_min) + ',' +
           std::to_string(f.fit.n_max) + ',' + std::to_string(f.fit.sample_count) + ',' +
           fmt("%.10g", f.fit.base_of_mean) + '\n';
  }
  return out;
}

Report compare_measured_vs_bounds(std::span<const ExperimentRecord> records,
                                  std::span<const bounds::BoundCurvePoint> analytic, double tol,
                                  std::int64_t min_n) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw ConfigError("compare: tolerance must be >= 0");
  Report report{tol, {}};

  // A k group is a k-regime series when it spans enough distinct n.
  std::map<double, std::map<SolverKind, std::vector<ExperimentRecord>>> k_groups;
  std::vector<ExperimentRecord> rest;
  {
    std::map<double, std::vector<ExperimentRecord>> by_k;
    for (const auto& r : records) by_k[group_key(r, GroupBy::k)].push_back(r);
    for (auto& [k, rs] : by_k) {
      if (distinct_n(rs) >= kFitMinDistinctN && k > 0) {
        for (const auto& r : rs) k_groups[k][r.solver].push_back(r);
      } else {
        rest.insert(rest.end(), rs.begin(), rs.end());
      }
    }
  }

  for (auto& [k, by_solver] : k_groups) {
    const auto point = std::find_if(analytic.begin(), analytic.end(), [&](const bounds::BoundCurvePoint& a) {
      return std::fabs(a.k - k) <= 1e-6 * std::max(1.0, std::fabs(k));
    });
    if (point == analytic.end()) throw DataError("compare: no analytic bounds for k=" + fmt("%.6g", k));
    ReportRow row;
    row.regime = GroupBy::k;
    row.key = k;
    row.g_base = std::exp(bounds::g_of_k(k));
    row.lower_base = std::exp(bounds::exhaustive_lower_exponent(k));
    row.gamma = point->gamma;
    if (auto it = by_solver.find(SolverKind::exhaustive); it != by_solver.end())
      if (auto fit = try_fit(it->second, min_n)) row.exhaustive_base = fit->base;
    if (auto it = by_solver.find(SolverKind::bnb_census); it != by_solver.end())
      if (auto fit = try_fit(it->second, min_n)) row.census_base = fit->base;
    if (!row.exhaustive_base && !row.census_base)
      throw DataError("compare: not enough data to fit k=" + fmt("%.6g", k));
    if (row.exhaustive_base) {
      row.exhaustive_below_upper = *row.exhaustive_base <= *row.g_base * (1.0 + tol);
      row.exhaustive_above_lower = *row.exhaustive_base >= *row.lower_base * (1.0 - tol);
      row.pass = row.pass && *row.exhaustive_below_upper && *row.exhaustive_above_lower;
    }
    if (row.census_base) {
      row.census_below_gamma = *row.census_base <= *row.gamma * (1.0 + tol);
      row.pass = row.pass && *row.census_below_gamma;
    }
    report.rows.push_back(row);
  }

  // Remaining records: fixed-p series, checked for subexponential growth.
  std::map<double, std::vector<ExperimentRecord>> by_p;
  for (const auto& r : rest)
    if (r.solver == SolverKind::exhaustive) by_p[group_key(r, GroupBy::p)].push_back(r);
  for (const auto& [p, rs] : by_p) {
    auto fit = try_fit(rs, min_n);
    if (!fit) continue;
    ReportRow row;
    row.regime = GroupBy::p;
    row.key = p;
    row.exhaustive_base = fit->base;
    row.subexponential = fit->base <= 1.0 + tol;
    row.pass = *row.subexponential;
    report.rows.push_back(row);
  }
  if (report.rows.empty()) throw DataError("compare: no group has enough data to fit");
  return report;
}

Report compare_measured_vs_bounds(std::span<const ExperimentRecord> records, double tol, std::int64_t min_n) {
  std::set<double> ks;
  std::map<double, std::set<std::int64_t>> ns;
  for (const auto& r : records) ns[group_key(r, GroupBy::k)].insert(r.n);
  std::vector<bounds::BoundCurvePoint> analytic;
  for (const auto& [k, set] : ns)
    if (k > 0 && set.size() >= kFitMinDistinctN) analytic.push_back(bounds::gamma_of_k(k));
  return compare_measured_vs_bounds(records, analytic, tol, min_n);
}

namespace {

std::string opt_num(const std::optional<double>& v) { return v ? fmt("%.4f", *v) : "-"; }
std::string opt_flag(const std::optional<bool>& v) { return v ? (*v ? "ok" : "FAIL") : "-"; }
std::string opt_bit(const std::optional<bool>& v) { return v ? (*v ? "1" : "0") : ""; }
std::string opt_csv(const std::optional<double>& v) { return v ? fmt("%.10g", *v) : ""; }

}  // namespace

std::string report_to_text(const Report& report) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-6s %-10s %-10s %-10s %-10s %-10s %-10s %-6s %-6s %-6s %-6s %s\n", "regime",
                "key", "exh_base", "cen_base", "e^g", "e^lower", "gamma", "upper", "lower", "gamma", "subexp",
                "pass");
  os << buf;
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%-6s %-10s %-10s %-10s %-10s %-10s %-10s %-6s %-6s %-6s %-6s %s\n",
                  r.regime == GroupBy::k ? "k" : "p", fmt("%.6g", r.key).c_str(), opt_num(r.exhaustive_base).c_str(),
                  opt_num(r.census_base).c_str(), opt_num(r.g_base).c_str(), opt_num(r.lower_base).c_str(),
                  opt_num(r.gamma).c_str(), opt_flag(r.exhaustive_below_upper).c_str(),
                  opt_flag(r.exhaustive_above_lower).c_str(), opt_flag(r.census_below_gamma).c_str(),
                  opt_flag(r.subexponential).c_str(), r.pass ? "PASS" : "FAIL");
    os << buf;
  }
  os << "tol=" << fmt("%g", report.tol) << '\n';
  return os.str();
}

std::string report_to_csv(const Report& report) {
  std::string out =
      "regime,key,measured_base_exhaustive,measured_base_census,exp_g,exp_lower,gamma,"
      "exhaustive_below_upper,exhaustive_above_lower,census_below_gamma,subexponential,pass\n";
  for (const auto& r : report.rows) {
    out += std::string(r.regime == GroupBy::k ? "k" : "p") + ',' + fmt("%.10g", r.key) + ',' +
           opt_csv(r.exhaustive_base) + ',' + opt_csv(r.census_base) + ',' + opt_csv(r.g_base) + ',' +
           opt_csv(r.lower_base) + ',' + opt_csv(r.gamma) + ',' + opt_bit(r.exhaustive_below_upper) + ',' +
           opt_bit(r.exhaustive_above_lower) + ',' + opt_bit(r.census_below_gamma) + ',' +
           opt_bit(r.subexponential) + ',' + (r.pass ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace bbmis::harness
