#include "bbmis/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "bbmis/bounds.hpp"
#include "bbmis/error.hpp"
#include "bbmis/graph.hpp"
#include "bbmis/harness.hpp"
#include "bbmis/solvers.hpp"

namespace bbmis::cli {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Output {
 public:
  Output(std::ostream& fallback) : fallback_(fallback) {}
  std::string path;

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      fallback_ << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << text;
  }

 private:
  std::ostream& fallback_;
};

struct CurveArgs {
  std::optional<double> k;
  double k_min = 0.01;
  double k_max = 100;
  std::size_t steps = 200;
  bool log = false;
  bool data = false;
};

CLI::App* add_curve_command(CLI::App& bounds, const std::string& name, const std::string& help, CurveArgs& a,
                            Output& out) {
  auto* cmd = bounds.add_subcommand(name, help);
  auto* k = cmd->add_option("--k", a.k, "Single k value (> 0)")->check(CLI::PositiveNumber);
  cmd->add_option("--k-min", a.k_min, "Smallest k of the curve (> 0)")->check(CLI::PositiveNumber)->excludes(k);
  cmd->add_option("--k-max", a.k_max, "Largest k of the curve (> 0)")->check(CLI::PositiveNumber)->excludes(k);
  cmd->add_option("--steps", a.steps, "Number of curve points (>= 2)")->check(CLI::Range(2, 10'000'000))->excludes(k);
  cmd->add_flag("--log", a.log, "Logarithmic k spacing")->excludes(k);
  cmd->add_flag("--data", a.data, "Two-column whitespace output instead of CSV")->excludes(k);
  cmd->add_option("--out", out.path, "Output path (default stdout)");
  return cmd;
}

void run_curve(harness::CurveKind kind, const CurveArgs& a, const Output& out) {
  if (a.k) {
    const double k = *a.k;
    std::string line;
    switch (kind) {
      case harness::CurveKind::gamma: {
        const auto pt = bounds::gamma_of_k(k);
        line = "gamma=" + num(pt.gamma) + " x_star=" + num(pt.x_star) + " lambda=" + num(pt.lambda);
        break;
      }
      case harness::CurveKind::lambda:
        line = "lambda=" + num(bounds::lambda_of_k(k)) + " caption_approx=" + num(bounds::lambda_caption_approx(k));
        break;
      case harness::CurveKind::g_upper: {
        const double g = bounds::g_of_k(k);
        line = "g=" + num(g) + " base=" + num(std::exp(g));
        break;
      }
      case harness::CurveKind::lower: {
        const double e = bounds::exhaustive_lower_exponent(k);
        line = "exponent=" + num(e) + " base=" + num(std::exp(e));
        break;
      }
    }
    out.write(line + '\n');
    return;
  }
  if (!(a.k_max > a.k_min)) throw ConfigError("--k-max must exceed --k-min");
  const auto table = harness::compute_curve(kind, a.k_min, a.k_max, a.steps,
                                            a.log ? harness::CurveScale::log : harness::CurveScale::linear);
  out.write(a.data ? harness::curve_to_data(table) : harness::curve_to_csv(table));
}

std::vector<harness::SolverKind> parse_solvers(const std::vector<std::string>& names) {
  std::vector<harness::SolverKind> out;
  for (const auto& n : names) out.push_back(harness::parse_solver(n));
  return out;
}

int run(CLI::App& app, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);
  app.fallthrough(false);

  // gen
  Output gen_out(out);
  std::size_t gen_n = 0;
  std::optional<double> gen_p;
  std::optional<std::uint64_t> gen_m;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "Generate a random graph (DIMACS edge format)");
  gen->add_option("--n", gen_n, "Number of vertices")->required()->check(CLI::Range(std::size_t{0}, std::size_t{1} << 20));
  auto* gp = gen->add_option("--p", gen_p, "Edge probability of G(n,p)")->check(CLI::Range(0.0, 1.0));
  auto* gm = gen->add_option("--m", gen_m, "Edge count of G(n,m)")->excludes(gp);
  gp->excludes(gm);
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out.path, "Output path (default stdout)");

  // solve
  Output solve_out(out);
  std::string solve_algo = "bnb";
  std::string solve_graph;
  std::uint64_t solve_cap = kDefaultNodeCap;
  auto* solve = app.add_subcommand("solve", "Compute the independence number and the search-tree size");
  solve->add_option("--algo", solve_algo, "exhaustive | bnb | census | bruteforce")
      ->check(CLI::IsMember({"exhaustive", "bnb", "census", "bruteforce"}));
  solve->add_option("--graph", solve_graph, "DIMACS graph file")->required()->check(CLI::ExistingFile);
  solve->add_option("--cap", solve_cap, "Node cap (frontier cap for bnb)")->check(CLI::Range(std::uint64_t{1}, ~std::uint64_t{0}));
  solve->add_option("--out", solve_out.path, "Output path (default stdout)");

  // count-is
  Output count_out(out);
  std::string count_graph;
  auto* count = app.add_subcommand("count-is", "Count independent sets (empty set included)");
  count->add_option("--graph", count_graph, "DIMACS graph file")->required()->check(CLI::ExistingFile);
  count->add_option("--out", count_out.path, "Output path (default stdout)");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Evaluate analytic bounds");
  bnd->require_subcommand(1, 1);
  Output gamma_out(out), lambda_out(out), g_out(out), lower_out(out);
  CurveArgs gamma_args, lambda_args, g_args, lower_args;
  auto* b_gamma = add_curve_command(*bnd, "gamma", "Branch-and-bound base gamma(k)", gamma_args, gamma_out);
  auto* b_lambda = add_curve_command(*bnd, "lambda", "Root lambda(k) of mu", lambda_args, lambda_out);
  auto* b_g = add_curve_command(*bnd, "g", "Exhaustive upper exponent g(k)", g_args, g_out);
  auto* b_lower = add_curve_command(*bnd, "lower", "Exhaustive lower exponent", lower_args, lower_out);

  Output eis_out(out);
  std::int64_t eis_n = 0;
  double eis_p = 0;
  auto* b_eis = bnd->add_subcommand("expected-is", "Expected number of independent sets of G(n,p)");
  b_eis->add_option("--n", eis_n, "Number of vertices")->required()->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 40));
  b_eis->add_option("--p", eis_p, "Edge probability")->required()->check(CLI::Range(0.0, 1.0));
  b_eis->add_option("--out", eis_out.path, "Output path (default stdout)");

  Output wnu_out(out);
  std::int64_t wnu_n = 1, wnu_u = 1;
  double wnu_p = 0;
  auto* b_wnu = bnd->add_subcommand("wnu", "Weighted count w_n(u) of potential-u nodes");
  b_wnu->add_option("--n", wnu_n, "Number of vertices")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 30));
  b_wnu->add_option("--p", wnu_p, "Edge probability")->required()->check(CLI::Range(0.0, 1.0));
  b_wnu->add_option("--u", wnu_u, "Potential (1 <= u <= n)")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 30));
  b_wnu->add_option("--out", wnu_out.path, "Output path (default stdout)");

  // experiment
  Output exp_out(out);
  harness::GridConfig grid;
  std::vector<std::int64_t> n_list;
  std::vector<double> k_list, p_list, logn_list;
  std::vector<std::string> solver_names{"exhaustive"};
  std::string engine = "auto";
  auto* exp = app.add_subcommand("experiment", "Run a solver grid and write records CSV");
  exp->add_option("--n-list", n_list, "Comma-separated vertex counts")->required()->delimiter(',')
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{4096}));
  auto* ok = exp->add_option("--k-list", k_list, "p = k/n for each k")->delimiter(',')->check(CLI::NonNegativeNumber);
  auto* op = exp->add_option("--p-list", p_list, "Fixed edge probabilities")->delimiter(',')->check(CLI::Range(0.0, 1.0));
  auto* ol = exp->add_option("--logn-list", logn_list, "p = c ln(n)/n for each c")->delimiter(',')
                 ->check(CLI::NonNegativeNumber);
  ok->excludes(op)->excludes(ol);
  op->excludes(ol);
  exp->add_option("--seeds", grid.seeds_per_cell, "Seeds per cell")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 30));
  exp->add_option("--seed", grid.base_seed, "Base seed of the grid");
  exp->add_option("--solvers", solver_names, "exhaustive,bnb_census,bnb_best_first")->delimiter(',')
      ->check(CLI::IsMember({"exhaustive", "bnb_census", "bnb_best_first", "census", "bnb"}));
  exp->add_option("--node-cap", grid.node_cap, "Node cap per traversal")->check(CLI::Range(std::uint64_t{1}, ~std::uint64_t{0}));
  exp->add_option("--frontier-cap", grid.frontier_cap, "Frontier cap for best-first")
      ->check(CLI::Range(std::uint64_t{1}, ~std::uint64_t{0}));
  exp->add_option("--engine", engine, "auto | traverse | count")->check(CLI::IsMember({"auto", "traverse", "count"}));
  exp->add_option("--threads", grid.threads, "Worker threads")->check(CLI::Range(std::size_t{1}, std::size_t{1024}));
  exp->add_option("--out", exp_out.path, "Output path (default stdout)");

  // fit
  Output fit_out(out);
  std::string fit_in;
  std::string fit_group = "k";
  std::int64_t fit_min_n = 0;
  auto* fit = app.add_subcommand("fit", "Fit exponential bases to records");
  fit->add_option("--in", fit_in, "Records CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--group-by", fit_group, "k | p | all")->check(CLI::IsMember({"k", "p", "all"}));
  fit->add_option("--min-n", fit_min_n, "Ignore records with smaller n")->check(CLI::NonNegativeNumber);
  fit->add_option("--out", fit_out.path, "Output path (default stdout)");

  // compare
  Output cmp_out(out);
  std::string cmp_records;
  double cmp_tol = 0.05;
  std::int64_t cmp_min_n = 0;
  std::string cmp_csv;
  auto* cmp = app.add_subcommand("compare", "Check fitted bases against the analytic envelopes");
  cmp->add_option("--records", cmp_records, "Records CSV")->required()->check(CLI::ExistingFile);
  cmp->add_option("--tol", cmp_tol, "Relative slack")->check(CLI::Range(0.0, 1.0));
  cmp->add_option("--min-n", cmp_min_n, "Ignore records with smaller n")->check(CLI::NonNegativeNumber);
  cmp->add_option("--csv", cmp_csv, "Also write the report as CSV to this path");
  cmp->add_option("--out", cmp_out.path, "Output path for the text table (default stdout)");

  std::vector<std::string> argv_store{"bbmis"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : "");
    // Print help of the deepest selected subcommand.
    CLI::App* sel = &app;
    while (!sel->get_subcommands().empty()) sel = sel->get_subcommands().front();
    if (sel != &app) out << sel->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    CLI::App* sel = &app;
    while (!sel->get_subcommands().empty()) sel = sel->get_subcommands().front();
    err << sel->help();
    return kExitError;
  }

  if (gen->parsed()) {
    Graph g = gen_m ? gen_gnm(gen_n, *gen_m, gen_seed)
                    : gen_gnp(gen_n, gen_p ? *gen_p : throw ConfigError("gen: one of --p or --m is required"),
                              gen_seed);
    gen_out.write(write_dimacs(g));
  } else if (solve->parsed()) {
    const Graph g = read_dimacs_file(solve_graph);
    std::size_t alpha = 0;
    std::uint64_t nodes = 0;
    if (solve_algo == "exhaustive") {
      const auto r = exhaustive_search(g, solve_cap);
      alpha = r.alpha;
      nodes = r.nodes_expanded;
    } else if (solve_algo == "bnb") {
      const auto r = bnb_best_first(g, std::min<std::uint64_t>(solve_cap, kDefaultFrontierCap));
      alpha = r.alpha;
      nodes = r.nodes_expanded;
    } else if (solve_algo == "census") {
      alpha = bnb_best_first(g).alpha;
      nodes = bnb_census(g, alpha, solve_cap);
    } else {
      const auto r = brute_force_alpha(g);
      alpha = r.alpha;
      nodes = r.nodes_expanded;
    }
    solve_out.write("alpha=" + std::to_string(alpha) + " nodes=" + std::to_string(nodes) + '\n');
  } else if (count->parsed()) {
    count_out.write(std::to_string(count_independent_sets(read_dimacs_file(count_graph))) + '\n');
  } else if (b_gamma->parsed()) {
    run_curve(harness::CurveKind::gamma, gamma_args, gamma_out);
  } else if (b_lambda->parsed()) {
    run_curve(harness::CurveKind::lambda, lambda_args, lambda_out);
  } else if (b_g->parsed()) {
    run_curve(harness::CurveKind::g_upper, g_args, g_out);
  } else if (b_lower->parsed()) {
    run_curve(harness::CurveKind::lower, lower_args, lower_out);
  } else if (b_eis->parsed()) {
    eis_out.write(num(bounds::expected_is_count(eis_n, eis_p)) + '\n');
  } else if (b_wnu->parsed()) {
    if (wnu_u > wnu_n) throw ConfigError("wnu: requires u <= n");
    const auto w = bounds::w_n_u(wnu_n, wnu_p, wnu_u);
    wnu_out.write("w=" + num(w.value) + (w.chernoff_used ? " tail=chernoff" : " tail=exact") + '\n');
  } else if (exp->parsed()) {
    grid.n_list = n_list;
    const int lists = !k_list.empty() + !p_list.empty() + !logn_list.empty();
    if (lists != 1) throw ConfigError("experiment: exactly one of --k-list, --p-list, --logn-list is required");
    if (!k_list.empty()) {
      grid.regime = harness::Regime::fixed_k;
      grid.values = k_list;
    } else if (!p_list.empty()) {
      grid.regime = harness::Regime::fixed_p;
      grid.values = p_list;
    } else {
      grid.regime = harness::Regime::log_n;
      grid.values = logn_list;
    }
    grid.solvers = parse_solvers(solver_names);
    grid.engine = engine == "traverse" ? harness::Engine::traverse
                  : engine == "count"  ? harness::Engine::count
                                       : harness::Engine::automatic;
    exp_out.write(harness::records_to_csv(harness::run_grid(grid)));
  } else if (fit->parsed()) {
    const auto records = harness::parse_records_csv(read_file(fit_in));
    const auto by = fit_group == "k" ? harness::GroupBy::k : fit_group == "p" ? harness::GroupBy::p : harness::GroupBy::none;
    const auto fits = harness::fit_groups(records, by, fit_min_n);
    if (fits.empty()) throw DataError("fit: no group has enough data");
    fit_out.write(harness::fits_to_csv(fits));
  } else if (cmp->parsed()) {
    const auto records = harness::parse_records_csv(read_file(cmp_records));
    const auto report = harness::compare_measured_vs_bounds(records, cmp_tol, cmp_min_n);
    cmp_out.write(harness::report_to_text(report));
    if (!cmp_csv.empty()) {
      Output csv(out);
      csv.path = cmp_csv;
      csv.write(harness::report_to_csv(report));
    }
  }
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact maximum independent set search and its average-case bounds", "bbmis"};
  try {
    return run(app, args, out, err);
  } catch (const ResourceCapError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kExitResourceCap;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace bbmis::cli
