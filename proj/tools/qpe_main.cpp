// qpe: batch front end for QPE planning, analytic outcome distributions,
// Trotter sweeps and shot budgeting. Data goes to files under --out,
// diagnostics to stderr; exit code 2 flags bad input, 1 internal failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpe/errors.hpp"
#include "qpe/report.hpp"
#include "qpe/workflow.hpp"

namespace {

struct CliOptions {
  std::string hamiltonian_path;
  std::string init_path;
  std::string out_dir = ".";
  std::string strategy = "lcu-norm";
  double alpha = -1.0;  // negative: use the strategy default
  int d = 0;
  double epsilon_chem = qpe::kChemicalAccuracy;
  std::vector<int> a_sweep;
  int n_override = 0;
  int trotter_order = 1;
  std::vector<long long> trotter_mult;
  double shots_epsilon = 0.1;
  long long trials = 2000;
  std::uint64_t seed = 1;
  bool drop_identity = false;
  bool select_a = false;
  long long probe_shots = 50;
  double e_init = 0.0;
  double one_norm = 0.0;
  double e_shift = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double script_c1 = 0.0;
  double script_c2 = 0.0;
};

struct GivenFlags {
  bool e_init = false;
  bool one_norm = false;
  bool e_shift = false;
  bool c1 = false;
  bool c2 = false;
  bool script_c1 = false;
  bool script_c2 = false;
};

qpe::TimeStepStrategy make_strategy(const CliOptions& opts) {
  if (opts.strategy == "known-gap") return qpe::KnownGapOrder{opts.d};
  if (opts.strategy == "init-energy")
    return qpe::InitEnergy{opts.alpha > 0.0 ? opts.alpha : 1.5};
  if (opts.strategy == "lcu-norm") return qpe::LCUOneNorm{opts.alpha > 0.0 ? opts.alpha : 0.5};
  throw qpe::DomainError("unknown strategy '" + opts.strategy +
                         "' (expected lcu-norm, init-energy or known-gap)");
}

std::vector<int> effective_a_sweep(const CliOptions& opts) {
  if (!opts.a_sweep.empty()) return opts.a_sweep;
  return {0, 1, 2, 3};
}

// Planner scalars come from the files unless overridden on the command line.
qpe::PlanResult resolve_plan(const CliOptions& opts, const GivenFlags& given,
                             const qpe::ProblemSetup* setup) {
  qpe::PlanInputs inputs;
  inputs.strategy = make_strategy(opts);
  inputs.epsilon_chem = opts.epsilon_chem;
  inputs.a = effective_a_sweep(opts).front();
  inputs.trotter_order = opts.trotter_order;

  if (given.e_init) {
    inputs.e_init = opts.e_init;
  } else if (setup) {
    inputs.e_init = setup->e_init + setup->identity_shift;
  } else if (opts.strategy != "lcu-norm") {
    throw qpe::ValidationError("this strategy needs --e-init or --hamiltonian/--init files");
  }
  if (given.e_shift)
    inputs.identity_shift = opts.e_shift;
  else if (setup)
    inputs.identity_shift = setup->identity_shift;

  if (given.one_norm) {
    inputs.one_norm = opts.one_norm;
  } else if (setup) {
    inputs.one_norm = setup->one_norm;
  } else if (opts.strategy == "lcu-norm") {
    throw qpe::ValidationError("lcu-norm needs --one-norm or a --hamiltonian file");
  }

  if (opts.trotter_order == 1) {
    if (given.script_c1)
      inputs.script_c_p = opts.script_c1;
    else if (given.c1)
      inputs.c_p = opts.c1;
    else if (setup)
      inputs.c_p = qpe::commutator_constant_c1(setup->hamiltonian);
  } else {
    if (given.script_c2)
      inputs.script_c_p = opts.script_c2;
    else if (given.c2)
      inputs.c_p = opts.c2;
    // |C_2| has no closed form here; without a value the budget is omitted.
  }

  if (setup && setup->hamiltonian.terms.size() == 1 &&
      std::holds_alternative<qpe::LCUOneNorm>(inputs.strategy))
    inputs.extra_notes.push_back(
        "single-term Hamiltonian: the one-norm equals the spectral norm, so t = alpha/|E| exactly");

  return qpe::build_plan(inputs);
}

std::string out_path(const CliOptions& opts, const std::string& name) {
  std::filesystem::create_directories(opts.out_dir);
  return (std::filesystem::path(opts.out_dir) / name).string();
}

std::optional<qpe::ProblemSetup> maybe_load(const CliOptions& opts) {
  if (opts.hamiltonian_path.empty() && opts.init_path.empty()) return std::nullopt;
  if (opts.hamiltonian_path.empty() || opts.init_path.empty())
    throw qpe::ValidationError("--hamiltonian and --init must be given together");
  return qpe::load_problem(opts.hamiltonian_path, opts.init_path, opts.drop_identity);
}

qpe::ProblemSetup require_load(const CliOptions& opts) {
  auto setup = maybe_load(opts);
  if (!setup) throw qpe::ValidationError("this command needs --hamiltonian and --init files");
  return std::move(*setup);
}

int run_plan(const CliOptions& opts, const GivenFlags& given) {
  const auto setup = maybe_load(opts);
  const qpe::PlanResult result = resolve_plan(opts, given, setup ? &*setup : nullptr);
  qpe::write_file(out_path(opts, "plan.json"), qpe::plan_to_json(result));
  std::cerr << qpe::plan_summary_line(result) << "\n";
  return 0;
}

int run_distribution(const CliOptions& opts, const GivenFlags& given) {
  const qpe::ProblemSetup setup = require_load(opts);
  const qpe::PlanResult result = resolve_plan(opts, given, &setup);
  const std::vector<int> a_sweep = effective_a_sweep(opts);
  const int n_phase =
      opts.n_override > 0 ? opts.n_override : result.plan.n_min + result.plan.a;
  const qpe::DistributionArtifacts art =
      qpe::analyze_distribution(setup, result.plan, n_phase, a_sweep);
  qpe::write_file(out_path(opts, "distribution.csv"), qpe::distribution_to_csv(art.dist));
  qpe::write_file(out_path(opts, "diagnostics.json"), qpe::diagnostics_to_json(art, setup));
  std::cerr << "distribution: N=" << n_phase << " l*=" << art.dist.l_star
            << " delta=" << art.dist.delta_gap << "\n";
  return 0;
}

int run_sweep(const CliOptions& opts, const GivenFlags& given) {
  const qpe::ProblemSetup setup = require_load(opts);
  const qpe::PlanResult result = resolve_plan(opts, given, &setup);
  const std::vector<int> a_sweep = effective_a_sweep(opts);
  const int n_max = opts.n_override > 0
                        ? opts.n_override
                        : result.plan.n_min + *std::max_element(a_sweep.begin(), a_sweep.end());
  std::vector<int> n_values;
  for (int n = 1; n <= n_max; ++n) n_values.push_back(n);
  std::vector<long long> multipliers =
      opts.trotter_mult.empty() ? std::vector<long long>{1, 10, 100} : opts.trotter_mult;

  const double exact_e0 = setup.spectrum.energies[0] + setup.identity_shift;
  const auto points =
      qpe::run_sweep(setup, result, exact_e0, n_values, multipliers, opts.trotter_order);
  qpe::write_file(out_path(opts, "sweep.csv"), qpe::sweep_to_csv(points));

  std::optional<double> c_p;
  if (opts.trotter_order == 1 && given.c1) c_p = opts.c1;
  if (opts.trotter_order == 2 && given.c2) c_p = opts.c2;
  std::vector<qpe::TrotterErrorRow> rows;
  for (long long mult : multipliers) {
    if (mult < 1) continue;  // 0 is the exact-unitary sentinel
    const auto part =
        qpe::trotter_error_sweep(setup, result.plan.t, opts.trotter_order, mult, n_max, c_p);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  qpe::write_file(out_path(opts, "trotter.csv"), qpe::trotter_errors_to_csv(rows));
  std::cerr << "sweep: " << points.size() << " points, N<=" << n_max << "\n";
  return 0;
}

int run_shots(const CliOptions& opts, const GivenFlags& given) {
  const qpe::ProblemSetup setup = require_load(opts);
  const qpe::PlanResult result = resolve_plan(opts, given, &setup);
  const std::vector<int> a_sweep = effective_a_sweep(opts);
  const qpe::ShotsArtifacts art =
      qpe::run_shots(setup, result.plan, a_sweep, opts.shots_epsilon, opts.trials, opts.seed,
                     opts.select_a, opts.probe_shots);
  qpe::write_file(out_path(opts, "shots.json"),
                  qpe::shots_to_json(art, opts.shots_epsilon, opts.seed));
  qpe::write_file(out_path(opts, "histogram.csv"), qpe::histogram_to_csv(art.histogram));
  std::cerr << "shots: " << art.rows.size() << " rows";
  if (art.select_a) std::cerr << ", chosen a=" << art.chosen_a;
  std::cerr << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QPE free-parameter planner and analytic simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value config; command-line flags win");

  CliOptions opts;
  GivenFlags given;

  app.add_option("--hamiltonian", opts.hamiltonian_path, "Hamiltonian file (LCU of Pauli words)");
  app.add_option("--init", opts.init_path, "initial-state file (basis/amp/eig)");
  app.add_option("--out", opts.out_dir, "output directory");
  app.add_option("--strategy", opts.strategy, "lcu-norm|init-energy|known-gap");
  app.add_option("--alpha", opts.alpha, "strategy parameter alpha");
  app.add_option("--d", opts.d, "known-gap order of magnitude (t = 10^d)");
  app.add_option("--epsilon-chem", opts.epsilon_chem, "target accuracy in Hartree");
  app.add_option("--a", opts.a_sweep, "extra phase qubits; first value feeds the plan");
  app.add_option("--N", opts.n_override, "phase-qubit override");
  app.add_option("--trotter-order", opts.trotter_order, "product-formula order (1 or 2)");
  app.add_option("--trotter-mult", opts.trotter_mult,
                 "Trotter multipliers m (n(q) = m 2^q); 0 = exact unitary");
  app.add_option("--shots-epsilon", opts.shots_epsilon, "readout failure budget epsilon");
  app.add_option("--trials", opts.trials, "Hoeffding verification trials");
  app.add_option("--seed", opts.seed, "base RNG seed");
  app.add_flag("--drop-identity", opts.drop_identity,
               "exclude the all-I term from evolution and the one-norm; report it as a shift");
  app.add_flag("--select-a", opts.select_a, "probe a in the sweep and rank by window quality");
  app.add_option("--probe-shots", opts.probe_shots, "shots per probe for --select-a");
  auto* opt_e_init = app.add_option("--e-init", opts.e_init, "E_init in Hartree (overrides files)");
  auto* opt_one_norm = app.add_option("--one-norm", opts.one_norm, "LCU one-norm (overrides files)");
  auto* opt_e_shift =
      app.add_option("--e-shift", opts.e_shift, "constant subtracted from E_init before planning");
  auto* opt_c1 = app.add_option("--c1", opts.c1, "|C_1| in Hartree^2 (overrides the computed value)");
  auto* opt_c2 = app.add_option("--c2", opts.c2, "|C_2| in Hartree^3");
  auto* opt_sc1 = app.add_option("--script-c1", opts.script_c1, "dimensionless script-C_1");
  auto* opt_sc2 = app.add_option("--script-c2", opts.script_c2, "dimensionless script-C_2");

  auto* cmd_plan = app.add_subcommand("plan", "emit plan.json and a summary line");
  auto* cmd_distribution =
      app.add_subcommand("distribution", "emit distribution.csv and diagnostics.json");
  auto* cmd_sweep = app.add_subcommand("sweep", "emit sweep.csv and trotter.csv");
  auto* cmd_shots = app.add_subcommand("shots", "emit shots.json and histogram.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  given.e_init = opt_e_init->count() > 0;
  given.one_norm = opt_one_norm->count() > 0;
  given.e_shift = opt_e_shift->count() > 0;
  given.c1 = opt_c1->count() > 0;
  given.c2 = opt_c2->count() > 0;
  given.script_c1 = opt_sc1->count() > 0;
  given.script_c2 = opt_sc2->count() > 0;

  try {
    if (cmd_plan->parsed()) return run_plan(opts, given);
    if (cmd_distribution->parsed()) return run_distribution(opts, given);
    if (cmd_sweep->parsed()) return run_sweep(opts, given);
    if (cmd_shots->parsed()) return run_shots(opts, given);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const qpe::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const qpe::ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const qpe::DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const qpe::CapacityError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
