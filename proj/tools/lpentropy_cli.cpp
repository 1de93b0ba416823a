// Batch front-end: one subcommand per experiment, deterministic seeding,
// CSV/JSON emission. Flat key=value config files mirror the long flags and
// command-line flags take precedence.
#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lpentropy/closedform.hpp"
#include "lpentropy/minimizer.hpp"
#include "lpentropy/nash.hpp"
#include "lpentropy/radial.hpp"
#include "lpentropy/report.hpp"
#include "lpentropy/rng.hpp"
#include "lpentropy/sphere.hpp"
#include "lpentropy/version.hpp"

namespace {

using namespace lpentropy;

constexpr double kDeficitFloor = -1e-7;

struct OutputSpec {
  std::string path = "-";
  std::string format; // "csv", "json", or empty for path-derived
};

std::string resolved_format(const OutputSpec& out) {
  if (!out.format.empty()) return out.format;
  if (out.path.size() >= 5 &&
      out.path.compare(out.path.size() - 5, 5, ".json") == 0)
    return "json";
  return "csv";
}

void emit(const TableWriter& table, const OutputSpec& out) {
  const std::string format = resolved_format(out);
  if (out.path == "-") {
    if (format == "json")
      table.write_json(std::cout);
    else
      table.write_csv(std::cout);
    return;
  }
  std::ofstream os(out.path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + out.path);
  if (format == "json")
    table.write_json(os);
  else
    table.write_csv(os);
}

void add_output_options(CLI::App* cmd, OutputSpec& out) {
  cmd->add_option("--output", out.path,
                  "output path, '-' streams to standard output")
      ->capture_default_str();
  cmd->add_option("--format", out.format, "csv or json (default: csv, or "
                                          "json for *.json paths)")
      ->check(CLI::IsMember({"csv", "json"}));
}

void add_config_option(CLI::App* cmd, std::string& path) {
  cmd->add_option("--config", path,
                  "flat key=value file mirroring the long flags; explicit "
                  "flags override file values");
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// flat key=value lines; '#' comments and blank lines allowed
std::vector<std::string> config_flags(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("unreadable config: " + path);
  std::vector<std::string> flags;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line without '=': " + line);
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config line without a key: " + line);
    flags.push_back("--" + key + "=" + value);
  }
  return flags;
}

// Pulls --config out of the raw arguments and splices the file's key=value
// pairs in right after the subcommand name, so explicitly passed flags sit
// later and win under the take-last policy.
std::vector<std::string> args_with_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  std::vector<std::string> cleaned;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw std::runtime_error("--config expects a file path");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      cleaned.push_back(args[i]);
    }
  }
  if (!config_path.empty()) {
    auto sub = std::find_if(cleaned.begin(), cleaned.end(),
                            [](const std::string& s) {
                              return !s.empty() && s[0] != '-';
                            });
    if (sub == cleaned.end())
      throw std::runtime_error("--config requires a subcommand");
    const auto flags = config_flags(config_path);
    cleaned.insert(sub + 1, flags.begin(), flags.end());
  }
  return cleaned;
}

std::vector<double> parse_grid(const std::string& csv_list,
                               const char* what) {
  std::vector<double> grid;
  std::size_t start = 0;
  while (start <= csv_list.size()) {
    const std::size_t comma = csv_list.find(',', start);
    const std::string tok =
        csv_list.substr(start, comma == std::string::npos ? std::string::npos
                                                          : comma - start);
    if (!tok.empty()) {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size())
        throw std::invalid_argument(std::string(what) +
                                    ": malformed number '" + tok + "'");
      grid.push_back(v);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (grid.empty())
    throw std::invalid_argument(std::string(what) + ": empty grid");
  return grid;
}

Cell meta_version() { return Cell{std::string(version)}; }

// every emitted row leads with (n, p, q, seed, tool-version); commands
// without a q parameter leave the cell empty
std::vector<std::string> with_meta(std::vector<std::string> rest) {
  std::vector<std::string> cols{"n", "p", "q", "seed", "tool-version"};
  cols.insert(cols.end(), rest.begin(), rest.end());
  return cols;
}

std::vector<Cell> meta_cells(int n, double p, Cell q, std::uint64_t seed) {
  return {Cell{static_cast<long long>(n)}, Cell{p}, std::move(q),
          Cell{static_cast<long long>(seed)}, meta_version()};
}

void append(std::vector<Cell>& row, std::vector<Cell> rest) {
  row.insert(row.end(), std::make_move_iterator(rest.begin()),
             std::make_move_iterator(rest.end()));
}

int run_constants(int n, double p, double q, bool has_q,
                  const OutputSpec& out) {
  Params params;
  params.n = n;
  params.p = p;
  if (has_q) params.q = q;
  params.validate();

  const ExtremalSpec ext = extremal_spec(n, p);
  const Moments m = moments(n, p);
  TableWriter table(with_meta({"quantity", "value"}));
  const Cell qcell = has_q ? Cell{q} : Cell{};
  auto put = [&](const std::string& name, double value) {
    auto row = meta_cells(n, p, qcell, 0);
    append(row, {Cell{name}, Cell{value}});
    table.add_row(std::move(row));
  };
  put("a0", a0_constant(n, p));
  put("surface_area", surface_area(n));
  put("extremal_amplitude", ext.a);
  put("extremal_decay", ext.b);
  put("extremal_exponent", ext.s);
  put("I1", m.I1);
  put("I2", m.I2);
  put("J1", m.J1);
  put("J2", m.J2);
  put("J3", m.J3);
  if (has_q) put("theta", theta(n, p, q));
  emit(table, out);
  return 0;
}

int run_deficit(int n, double p, const std::string& profile, int count,
                std::uint64_t seed, const OutputSpec& out) {
  Params params;
  params.n = n;
  params.p = p;
  params.validate();
  if (count < 1) throw std::invalid_argument("requires count >= 1");

  TableWriter table(with_meta(
      {"profile", "index", "entropy", "dirichlet", "deficit", "status"}));
  int flagged = 0;
  auto put = [&](const std::string& name, int index,
                 const ParametricProfile& u) {
    const FunctionalReport r = functional_report(u, n, p);
    const bool bad = !(r.deficit >= kDeficitFloor);
    flagged += bad;
    auto row = meta_cells(n, p, Cell{}, seed);
    append(row, {Cell{name}, Cell{static_cast<long long>(index)},
                 Cell{r.entropy}, Cell{r.dirichlet}, Cell{r.deficit},
                 Cell{std::string(bad ? "flagged" : "ok")}});
    table.add_row(std::move(row));
  };

  if (profile == "extremal") {
    put("extremal", 0, extremal_profile(n, p));
  } else {
    const RadialFamily family = family_from_name(profile);
    Rng rng(seed);
    for (int i = 0; i < count; ++i)
      put(profile, i, normalized(random_profile(family, rng), n, p));
  }
  emit(table, out);
  return flagged > 0 ? 1 : 0;
}

int run_nash_scan(int n, double p, const std::string& q_grid,
                  const std::string& family, int restarts, int max_evals,
                  std::uint64_t seed, const OutputSpec& out) {
  const auto grid = parse_grid(q_grid, "q-grid");
  Params params;
  params.n = n;
  params.p = p;
  params.q = grid.front();
  params.validate();

  NashBudget budget;
  budget.restarts = restarts;
  budget.max_evals = max_evals;
  const auto rows = monotonicity_scan(n, p, grid, family_from_name(family),
                                      seed, budget);
  const double a0 = a0_constant(n, p);
  TableWriter table(with_meta({"theta", "N_hat", "A0", "evals", "status"}));
  int flagged = 0;
  for (const auto& r : rows) {
    flagged += r.optimizer_status != "ok";
    auto row = meta_cells(n, p, Cell{r.q}, r.seed);
    append(row, {Cell{r.theta}, Cell{r.n_hat}, Cell{a0}, Cell{r.evals},
                 Cell{r.optimizer_status}});
    table.add_row(std::move(row));
  }
  emit(table, out);
  return flagged > 0 ? 1 : 0;
}

int run_limit_trace(int n, double p, const std::string& q_grid,
                    const std::string& profile, std::uint64_t seed,
                    const OutputSpec& out) {
  Params params;
  params.n = n;
  params.p = p;
  params.validate();

  std::vector<double> grid;
  if (q_grid.empty()) {
    double gap = 0.1; // p - 10^-k for k = 1..7, above the precision floor
    for (int k = 1; k <= 7; ++k, gap /= 10.0) grid.push_back(p - gap);
  } else {
    grid = parse_grid(q_grid, "q-grid");
  }

  ParametricProfile u;
  if (profile == "extremal") {
    u = extremal_profile(n, p);
  } else {
    Rng rng(seed);
    u = normalized(random_profile(family_from_name(profile), rng), n, p);
  }

  const auto rows = entropy_limit_trace(u, n, p, grid);
  TableWriter table(
      with_meta({"profile", "estimate", "target", "error", "status"}));
  int flagged = 0;
  for (const auto& r : rows) {
    flagged += r.flagged;
    auto row = meta_cells(n, p, Cell{r.q}, seed);
    append(row, {Cell{profile}, Cell{r.estimate}, Cell{r.target},
                 Cell{r.error},
                 Cell{std::string(r.flagged ? "flagged" : "ok")}});
    table.add_row(std::move(row));
  }
  emit(table, out);
  return flagged > 0 ? 1 : 0;
}

int run_bubble_fit(int n, double p, const std::string& observable,
                   const std::string& eps_grid, double delta, int nodes,
                   const OutputSpec& out) {
  Params params;
  params.n = n;
  params.p = p;
  params.validate();

  std::vector<double> grid;
  if (eps_grid.empty())
    grid = {0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08};
  else
    grid = parse_grid(eps_grid, "eps-grid");

  std::vector<Observable> wanted;
  if (observable == "all")
    wanted = {Observable::mass, Observable::entropy, Observable::energy};
  else
    wanted = {observable_from_name(observable)};

  TableWriter table(with_meta({"observable", "term", "fitted", "predicted",
                               "relative_error", "residual_rms",
                               "condition_number"}));
  for (Observable obs : wanted) {
    const ExpansionFit fit = expansion_fit(n, p, grid, obs, delta, nodes);
    static const char* const kTerms[] = {"const", "eps2", "eps2_log_eps"};
    for (std::size_t i = 0; i < fit.fitted.size(); ++i) {
      auto row = meta_cells(n, p, Cell{}, 0);
      append(row, {Cell{observable_name(obs)}, Cell{std::string(kTerms[i])},
                   Cell{fit.fitted[i]}, Cell{fit.predicted[i]},
                   Cell{fit.relative_error[i]}, Cell{fit.residual_rms},
                   Cell{fit.condition_number}});
      table.add_row(std::move(row));
    }
  }
  emit(table, out);
  return 0;
}

int run_b_search(int n, double p, double a_constant, bool has_a,
                 const std::string& family, int restarts, int max_evals,
                 int nodes, std::uint64_t seed, const OutputSpec& out) {
  Params params;
  params.n = n;
  params.p = p;
  params.validate();

  const double a = has_a ? a_constant : a0_constant(n, p);
  BSearchBudget budget;
  budget.restarts = restarts;
  budget.max_evals = max_evals;
  budget.n_nodes = nodes;
  const BSearchResult r =
      b_search(n, p, a, zonal_family_from_name(family), seed, budget);

  TableWriter table(with_meta({"family", "A", "B_hat", "constant_candidate",
                               "curvature_comparison", "evals", "status"}));
  auto row = meta_cells(n, p, Cell{}, seed);
  append(row, {Cell{family}, Cell{a}, Cell{r.b_hat},
               Cell{r.constant_candidate}, Cell{r.curvature_comparison},
               Cell{r.evals}, Cell{r.status}});
  table.add_row(std::move(row));
  emit(table, out);
  return r.status == "ok" ? 0 : 1;
}

int run_minimize(int n, double p, double q, double c, int nodes,
                 int max_iters, double grad_tol, double bump,
                 std::uint64_t seed, const OutputSpec& out) {
  Params params;
  params.n = n;
  params.p = p;
  params.q = q;
  params.validate();

  DescentBudget budget;
  budget.max_iters = max_iters;
  budget.grad_tol = grad_tol;
  const MinimizeResult r =
      minimize_j(n, p, q, c, default_init(n, p, nodes, bump), budget);

  TableWriter table(with_meta({"C", "nu", "a_k", "b_k", "el_residual",
                               "iterations", "j_first", "j_last", "status"}));
  auto row = meta_cells(n, p, Cell{q}, seed);
  append(row,
         {Cell{c}, Cell{r.nu}, Cell{r.a_k}, Cell{r.b_k}, Cell{r.el_residual},
          Cell{static_cast<long long>(r.iterations)},
          Cell{r.j_trace.front()}, Cell{r.j_trace.back()}, Cell{r.status}});
  table.add_row(std::move(row));
  emit(table, out);
  return r.status == "ok" ? 0 : 1;
}

int run_b_trace(int n, double p, const std::string& q_grid,
                const std::string& family, bool euclidean_reference,
                int restarts, int max_evals, int nodes, int descent_nodes,
                std::uint64_t seed, const OutputSpec& out) {
  const auto grid = parse_grid(q_grid, "q-grid");
  Params params;
  params.n = n;
  params.p = p;
  params.q = grid.front();
  params.validate();

  BTraceOptions opts;
  opts.family = zonal_family_from_name(family);
  opts.nash_reference = euclidean_reference;
  opts.nash_budget.restarts = restarts;
  opts.nash_budget.max_evals = max_evals;
  opts.sup_budget.restarts = restarts;
  opts.sup_budget.max_evals = max_evals;
  opts.sup_budget.n_nodes = nodes;
  opts.descent_nodes = descent_nodes;

  const auto rows = b_lower_trace(n, p, grid, seed, opts);
  TableWriter table(with_meta(
      {"theta", "N_ref", "B_hat", "C_k", "nu", "el_residual", "status"}));
  int flagged = 0;
  for (const auto& r : rows) {
    flagged += r.status != "ok";
    auto row = meta_cells(n, p, Cell{r.q}, seed);
    append(row, {Cell{r.theta}, Cell{r.n_ref}, Cell{r.b_hat}, Cell{r.c_k},
                 Cell{r.nu}, Cell{r.el_residual}, Cell{r.status}});
    table.add_row(std::move(row));
  }
  emit(table, out);
  return flagged > 0 ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy and Nash inequality laboratory"};
  app.set_version_flag("--version", std::string(lpentropy::version));
  app.require_subcommand(1);

  // shared parameter storage; each subcommand registers only what it uses
  int n = 3;
  double p = 2.0;
  double q = 1.9;
  double c = 1.0;
  double a_constant = 0.0;
  double delta = 0.5;
  double grad_tol = 1e-7;
  double bump = 0.05;
  int count = 200;
  int restarts = 8;
  int max_evals = 400;
  int nodes = 2000;
  int descent_nodes = 2000;
  int max_iters = 20000;
  std::uint64_t seed = 12345;
  std::string profile = "extremal";
  std::string observable = "all";
  std::string eps_grid;
  // per-subcommand storage: defaults differ, so sharing would leak one
  // subcommand's default into another
  std::string nash_q_grid = "1.0,1.5,1.8,1.95,1.99";
  std::string nash_family = "stretched_exp";
  std::string limit_q_grid;
  std::string bsearch_family = "cap_mixture";
  std::string btrace_q_grid = "1.5,1.8,1.9,1.95,1.99";
  std::string btrace_family = "cap_mixture";
  int bubble_nodes = 4000;
  std::string config_path; // consumed before parsing; registered for --help
  OutputSpec out;

  auto add_np = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "dimension")->capture_default_str();
    cmd->add_option("--p", p, "integrability exponent")->capture_default_str();
  };

  CLI::App* constants = app.add_subcommand(
      "constants", "closed-form constants and extremal moments");
  add_np(constants);
  CLI::Option* constants_q =
      constants->add_option("--q", q, "interpolation exponent (optional)");
  add_output_options(constants, out);
  add_config_option(constants, config_path);

  CLI::App* deficit = app.add_subcommand(
      "deficit", "entropy deficit of the extremal or random profiles");
  add_np(deficit);
  deficit->add_option("--profile", profile,
                      "extremal | stretched_exp | gaussian_mixture | "
                      "bump_mixture")
      ->capture_default_str();
  deficit->add_option("--count", count, "random profiles to draw")
      ->capture_default_str();
  deficit->add_option("--seed", seed, "rng seed")->capture_default_str();
  add_output_options(deficit, out);
  add_config_option(deficit, config_path);

  CLI::App* nash = app.add_subcommand(
      "nash-scan", "sharp-constant lower bounds over a q grid");
  add_np(nash);
  nash->add_option("--q-grid", nash_q_grid, "comma-separated q values")
      ->capture_default_str();
  nash->add_option("--family", nash_family, "trial family")
      ->capture_default_str();
  nash->add_option("--restarts", restarts, "simplex restarts")
      ->capture_default_str();
  nash->add_option("--max-evals", max_evals, "evaluations per restart")
      ->capture_default_str();
  nash->add_option("--seed", seed, "rng seed")->capture_default_str();
  add_output_options(nash, out);
  add_config_option(nash, config_path);

  CLI::App* limit = app.add_subcommand(
      "limit-trace", "difference-quotient trace of the q -> p entropy limit");
  add_np(limit);
  limit->add_option("--q-grid", limit_q_grid,
                    "comma-separated q values (default p - 10^-k, k=1..7)");
  limit->add_option("--profile", profile,
                    "extremal | stretched_exp | gaussian_mixture | "
                    "bump_mixture")
      ->capture_default_str();
  limit->add_option("--seed", seed, "rng seed for random profiles")
      ->capture_default_str();
  add_output_options(limit, out);
  add_config_option(limit, config_path);

  CLI::App* bubble = app.add_subcommand(
      "bubble-fit", "small-eps expansion fits of bubble observables");
  add_np(bubble);
  bubble->add_option("--observable", observable,
                     "mass | entropy | energy | all")
      ->capture_default_str();
  bubble->add_option("--eps-grid", eps_grid,
                     "comma-separated eps values (default 0.02..0.08)");
  bubble->add_option("--delta", delta, "cutoff radius")->capture_default_str();
  bubble->add_option("--nodes", bubble_nodes, "quadrature nodes")
      ->capture_default_str();
  add_output_options(bubble, out);
  add_config_option(bubble, config_path);

  CLI::App* bsearch = app.add_subcommand(
      "b-search", "smallest additive constant over a zonal family");
  add_np(bsearch);
  CLI::Option* bsearch_a = bsearch->add_option(
      "--a-constant", a_constant,
      "gradient coefficient A (default: Euclidean sharp constant)");
  bsearch->add_option("--family", bsearch_family,
                      "constant | cap_mixture | const_bubble")
      ->capture_default_str();
  bsearch->add_option("--restarts", restarts, "simplex restarts")
      ->capture_default_str();
  bsearch->add_option("--max-evals", max_evals, "evaluations per restart")
      ->capture_default_str();
  bsearch->add_option("--nodes", nodes, "quadrature nodes")
      ->capture_default_str();
  bsearch->add_option("--seed", seed, "rng seed")->capture_default_str();
  add_output_options(bsearch, out);
  add_config_option(bsearch, config_path);

  CLI::App* minimize = app.add_subcommand(
      "minimize", "projected descent on the penalized quotient");
  add_np(minimize);
  minimize->add_option("--q", q, "interpolation exponent")
      ->capture_default_str();
  minimize->add_option("--c", c, "penalty coefficient C")
      ->capture_default_str();
  minimize->add_option("--nodes", descent_nodes, "descent grid nodes")
      ->capture_default_str();
  minimize->add_option("--max-iters", max_iters, "iteration budget")
      ->capture_default_str();
  minimize->add_option("--grad-tol", grad_tol, "gradient tolerance")
      ->capture_default_str();
  minimize->add_option("--bump", bump, "polar bump size of the start")
      ->capture_default_str();
  minimize->add_option("--seed", seed, "recorded in output metadata")
      ->capture_default_str();
  add_output_options(minimize, out);
  add_config_option(minimize, config_path);

  CLI::App* btrace = app.add_subcommand(
      "b-trace", "lower-bound trace for the additive constant over q");
  add_np(btrace);
  btrace->add_option("--q-grid", btrace_q_grid, "comma-separated q values")
      ->capture_default_str();
  btrace->add_option("--family", btrace_family,
                     "constant | cap_mixture | const_bubble")
      ->capture_default_str();
  bool euclidean_reference = true;
  btrace->add_flag("--euclidean-reference,!--closed-form-reference",
                   euclidean_reference,
                   "estimate the Euclidean reference constant (default) or "
                   "use the closed form");
  btrace->add_option("--restarts", restarts, "simplex restarts")
      ->capture_default_str();
  btrace->add_option("--max-evals", max_evals, "evaluations per restart")
      ->capture_default_str();
  btrace->add_option("--nodes", nodes, "sup-search quadrature nodes")
      ->capture_default_str();
  btrace->add_option("--descent-nodes", descent_nodes, "descent grid nodes")
      ->capture_default_str();
  btrace->add_option("--seed", seed, "rng seed")->capture_default_str();
  add_output_options(btrace, out);
  add_config_option(btrace, config_path);

  for (CLI::App* cmd : {constants, deficit, nash, limit, bubble, bsearch,
                        minimize, btrace})
    for (CLI::Option* o : cmd->get_options())
      o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::vector<std::string> args;
  try {
    args = args_with_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::reverse(args.begin(), args.end()); // the vector overload pops from the back
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help, --version
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (constants->parsed())
      return run_constants(n, p, q, !constants_q->empty(), out);
    if (deficit->parsed())
      return run_deficit(n, p, profile, count, seed, out);
    if (nash->parsed())
      return run_nash_scan(n, p, nash_q_grid, nash_family, restarts,
                           max_evals, seed, out);
    if (limit->parsed())
      return run_limit_trace(n, p, limit_q_grid, profile, seed, out);
    if (bubble->parsed())
      return run_bubble_fit(n, p, observable, eps_grid, delta, bubble_nodes,
                            out);
    if (bsearch->parsed())
      return run_b_search(n, p, a_constant, !bsearch_a->empty(),
                          bsearch_family, restarts, max_evals, nodes, seed,
                          out);
    if (minimize->parsed())
      return run_minimize(n, p, q, c, descent_nodes, max_iters, grad_tol,
                          bump, seed, out);
    if (btrace->parsed())
      return run_b_trace(n, p, btrace_q_grid, btrace_family,
                         euclidean_reference, restarts, max_evals, nodes,
                         descent_nodes, seed, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2; // unreachable with require_subcommand(1)
}
