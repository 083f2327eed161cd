#include "ibp/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ibp/bb_solver.hpp"
#include "ibp/milp_model.hpp"
#include "ibp/report.hpp"
#include "ibp/search.hpp"

namespace ibp::cli {

namespace fs = std::filesystem;

namespace {

// Failure to read or write a file.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* const kCommands[] = {"solve",      "sweep",    "lower-bound", "oracle",
                                 "export-mps", "validate", "generate"};

std::string path_in(const RunManifest& m, const std::string& name) {
  return (fs::path(m.output_dir) / name).string();
}

void ensure_output_dir(const RunManifest& m) {
  std::error_code ec;
  fs::create_directories(m.output_dir, ec);
  if (ec || !fs::is_directory(m.output_dir)) {
    throw IoError("cannot create output directory '" + m.output_dir + "'");
  }
}

template <class Emit>
void write_file(const std::string& path, Emit emit) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit(out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

ScenarioConfig load(const RunManifest& m) {
  if (m.scenario_path.empty()) throw ScenarioError("scenario", "no scenario given (--scenario)");
  std::ifstream in(m.scenario_path);
  if (!in) throw IoError("cannot read scenario file '" + m.scenario_path + "'");
  return load_scenario(in);
}

SolveOptions solve_options(const RunManifest& m, std::ostream* log) {
  SolveOptions o;
  o.gap_tol = m.gap_tol;
  o.time_limit = m.time_limit;
  o.node_limit = m.node_limit;
  o.deterministic = m.deterministic;
  o.log = log;
  return o;
}

double first_xi(const RunManifest& m, double fallback) {
  return m.xi_values.empty() ? fallback : m.xi_values.front();
}

int first_blocks(const RunManifest& m, const ScenarioConfig& cfg) {
  return m.block_counts.empty() ? cfg.block_count : m.block_counts.front();
}

std::string num(double v) { return format_number(v); }

void print_report(const SolutionReport& r, std::ostream& out) {
  out << "status " << r.solver.status << "  xi " << num(r.xi) << "  F " << r.blocks << "\n";
  if (!r.has_solution) return;
  out << "lambda_1 " << num(r.prices.lambda1) << "  q";
  for (double q : r.prices.breakpoints) out << ' ' << num(q);
  out << "\npar " << num(r.par) << "  (baseline " << num(r.reference.par) << ", reduction "
      << format_percent(r.par_reduction_pct) << "%)\n";
}

ExitCode cmd_validate(const RunManifest& m, std::ostream& out) {
  const auto cfg = load(m);
  const auto d = derive(cfg);
  out << "scenario: " << cfg.label << "\n"
      << "horizon: " << cfg.horizon << "\n"
      << "clusters: " << cfg.num_clusters() << "\n"
      << "flat_price: " << num(d.flat_price) << "\n"
      << "baseline_par: " << num(d.baseline_par) << "\n"
      << "total_demand: " << num(d.total_demand) << "\n"
      << "breakpoint_bounds: [" << num(d.default_bounds.lower) << ", "
      << num(d.default_bounds.upper) << "]\n";
  const std::vector<double> xis = m.xi_values.empty() ? std::vector<double>{0.03} : m.xi_values;
  for (int F : m.block_counts.empty() ? std::vector<int>{cfg.block_count} : m.block_counts) {
    ScenarioConfig c = cfg;
    c.block_count = F;
    for (double xi : xis) {
      out << "--- big-M derivation, xi = " << num(xi) << ", F = " << F << "\n";
      out << compute_big_m(c, xi).derivation_log;
    }
  }
  return ExitCode::kSuccess;
}

ExitCode cmd_solve(const RunManifest& m, std::ostream& out) {
  auto cfg = load(m);
  ensure_output_dir(m);
  const double xi = first_xi(m, 0.03);
  const int F = first_blocks(m, cfg);
  std::ostringstream log;
  SolveOutcome outcome;
  const auto rep = solve_point(cfg, xi, F, solve_options(m, &log), &outcome);
  cfg.block_count = F;
  const bool timed = !m.deterministic;
  write_file(path_in(m, "solver.log"), [&](std::ostream& o) { o << log.str(); });
  write_file(path_in(m, "solve_summary.txt"),
             [&](std::ostream& o) { write_solve_summary(outcome, o, timed); });
  write_file(path_in(m, "summary.json"),
             [&](std::ostream& o) { emit_summary(cfg, {rep}, o, timed); });
  write_file(path_in(m, "solution.csv"), [&](std::ostream& o) { emit_sweep_csv({rep}, o); });
  if (rep.has_solution) {
    write_file(path_in(m, "profiles.csv"),
               [&](std::ostream& o) { emit_profiles(cfg, rep.response, std::nullopt, o); });
  }
  print_report(rep, out);
  return outcome.has_incumbent() ? ExitCode::kSuccess : ExitCode::kNoIncumbent;
}

ExitCode cmd_sweep(const RunManifest& m, std::ostream& out) {
  const auto cfg = load(m);
  ensure_output_dir(m);
  SweepSpec spec;
  spec.xi_values = m.xi_values.empty() ? default_xi_grid() : m.xi_values;
  spec.block_counts = m.block_counts.empty() ? std::vector<int>{2, 3} : m.block_counts;
  spec.solve_options = solve_options(m, nullptr);
  const auto reports = sweep(cfg, spec);
  write_file(path_in(m, "sweep.csv"), [&](std::ostream& o) { emit_sweep_csv(reports, o); });
  write_file(path_in(m, "summary.json"),
             [&](std::ostream& o) { emit_summary(cfg, reports, o, !m.deterministic); });
  for (const auto& r : reports) {
    out << "F " << r.blocks << "  xi " << num(r.xi) << "  " << r.solver.status;
    if (r.has_solution) out << "  par " << num(r.par) << "  reduction " << format_percent(r.par_reduction_pct) << "%";
    if (!r.solver.message.empty()) out << "  (" << r.solver.message << ")";
    out << "\n";
  }
  return ExitCode::kSuccess;
}

ExitCode cmd_lower_bound(const RunManifest& m, std::ostream& out) {
  auto cfg = load(m);
  ensure_output_dir(m);
  const int F = m.block_counts.empty() ? 2 : m.block_counts.front();
  const auto lb = lower_bound(cfg, m.eps, m.xi_large, F);
  cfg.block_count = F;
  const auto resp = solve_response(cfg, PriceStructure{0.0, lb.xi_large, lb.q_star}).response;
  write_file(path_in(m, "lower_bound.txt"), [&](std::ostream& o) { o << lb.log; });
  write_file(path_in(m, "lower_bound.csv"), [&](std::ostream& o) {
    o << "iteration";
    for (int f = 1; f < F; ++f) o << ",q_" << f;
    o << ",peak,par\n";
    for (std::size_t i = 0; i < lb.per_iteration.size(); ++i) {
      const auto& it = lb.per_iteration[i];
      o << i;
      for (double q : it.breakpoints) o << ',' << num(q);
      o << ',' << num(it.peak) << ',' << num(it.par) << '\n';
    }
  });
  write_file(path_in(m, "profiles.csv"),
             [&](std::ostream& o) { emit_profiles(cfg, resp, lb.envelopes, o); });
  out << lb.log;
  return ExitCode::kSuccess;
}

ExitCode cmd_oracle(const RunManifest& m, std::ostream& out) {
  auto cfg = load(m);
  ensure_output_dir(m);
  const double xi = first_xi(m, 0.03);
  const int F = first_blocks(m, cfg);
  const auto b = default_breakpoint_bounds(cfg);
  const double step = m.q_step.value_or((b.upper - b.lower) / 200.0);
  const auto rep = oracle_grid(cfg, xi, F, step);
  cfg.block_count = F;
  write_file(path_in(m, "oracle.csv"), [&](std::ostream& o) { emit_sweep_csv({rep}, o); });
  write_file(path_in(m, "summary.json"), [&](std::ostream& o) { emit_summary(cfg, {rep}, o); });
  write_file(path_in(m, "profiles.csv"),
             [&](std::ostream& o) { emit_profiles(cfg, rep.response, std::nullopt, o); });
  print_report(rep, out);
  out << rep.solver.message << "\n";
  return ExitCode::kSuccess;
}

ExitCode cmd_export(const RunManifest& m, std::ostream& out) {
  auto cfg = load(m);
  ensure_output_dir(m);
  const double xi = first_xi(m, 0.03);
  cfg.block_count = first_blocks(m, cfg);
  const auto model = build_milp(cfg, xi, compute_big_m(cfg, xi));
  write_file(path_in(m, "model.mps"), [&](std::ostream& o) { export_mps(model, o); });
  write_file(path_in(m, "model_stats.txt"), [&](std::ostream& o) { write_model_stats(model, o); });
  write_model_stats(model, out);
  return ExitCode::kSuccess;
}

ExitCode cmd_generate(const RunManifest& m, std::ostream& out) {
  const auto cfg = generate_scenario(m.seed, m.template_name, m.horizon, m.clusters, m.households);
  ensure_output_dir(m);
  const std::string path = path_in(m, "scenario.json");
  write_file(path, [&](std::ostream& o) { save_scenario(cfg, o); });
  out << "wrote " << path << " (baseline_par " << num(derive(cfg).baseline_par) << ")\n";
  return ExitCode::kSuccess;
}

}  // namespace

ExitCode run(const RunManifest& m, std::ostream& out, std::ostream& err) {
  try {
    if (m.command == "validate") return cmd_validate(m, out);
    if (m.command == "solve") return cmd_solve(m, out);
    if (m.command == "sweep") return cmd_sweep(m, out);
    if (m.command == "lower-bound") return cmd_lower_bound(m, out);
    if (m.command == "oracle") return cmd_oracle(m, out);
    if (m.command == "export-mps") return cmd_export(m, out);
    if (m.command == "generate") return cmd_generate(m, out);
    err << "error: unknown command '" << m.command << "'\n";
    return ExitCode::kScenarioError;
  } catch (const ScenarioError& e) {
    err << "scenario error: " << e.what() << "\n";
    return ExitCode::kScenarioError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return ExitCode::kIoError;
  } catch (const std::exception& e) {
    // Model and search errors stem from the scenario's content.
    err << "error: " << e.what() << "\n";
    return ExitCode::kScenarioError;
  }
}

std::optional<int> parse_command_line(int argc, char** argv, RunManifest& m) {
  CLI::App app{"Increasing-block tariff design: MILP solves, sweeps and bounds"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", m.scenario_path, "Scenario JSON file");
    sub->add_option("--out", m.output_dir, "Output directory");
    sub->add_option("--xi", m.xi_values, "Price increments")->delimiter(',');
    sub->add_option("--blocks", m.block_counts, "Block counts")->delimiter(',');
    sub->add_option("--eps", m.eps, "Breakpoint step of the lower bound")
        ->check(CLI::PositiveNumber);
    sub->add_option("--xi-large", m.xi_large, "Price increment of the lower bound")
        ->check(CLI::PositiveNumber);
    sub->add_option("--q-step", m.q_step, "Oracle grid step")->check(CLI::PositiveNumber);
    sub->add_option("--gap", m.gap_tol, "Relative optimality gap")->check(CLI::NonNegativeNumber);
    sub->add_option("--time-limit", m.time_limit, "Seconds per MILP solve")
        ->check(CLI::PositiveNumber);
    sub->add_option("--node-limit", m.node_limit, "Nodes per MILP solve")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--deterministic", m.deterministic,
                  "Reproducible runs: node limit only, no timing in outputs");
    sub->add_option("--seed", m.seed, "Seed for generate");
    sub->add_option("--template", m.template_name, "peaked, bimodal or flat")
        ->check(CLI::IsMember({"peaked", "bimodal", "flat"}));
    sub->add_option("--horizon", m.horizon, "Slots for generate")->check(CLI::Range(2, 999));
    sub->add_option("--clusters", m.clusters, "Clusters for generate")->check(CLI::Range(1, 99));
    sub->add_option("--households", m.households, "Households for generate")
        ->check(CLI::PositiveNumber);
  };
  for (const char* name : kCommands) add_common(app.add_subcommand(name));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : static_cast<int>(ExitCode::kScenarioError);
  }
  m.command = app.get_subcommands().front()->get_name();
  return std::nullopt;
}

}  // namespace ibp::cli
