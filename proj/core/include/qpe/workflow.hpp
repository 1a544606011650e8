#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpe/engine.hpp"
#include "qpe/hamiltonian.hpp"
#include "qpe/planner.hpp"
#include "qpe/sampler.hpp"
#include "qpe/spectrum.hpp"
#include "qpe/trotter.hpp"

namespace qpe {

/// Fully resolved problem inputs. With drop_identity the all-I term is
/// removed before diagonalization and its coefficient kept as
/// identity_shift; all energies reported downstream add the shift back.
struct ProblemSetup {
  LCUHamiltonian hamiltonian;
  double identity_shift = 0.0;
  bool drop_identity = false;
  Spectrum spectrum;
  InitialState init;
  double e_init = 0.0;    // working convention (shift excluded when dropped)
  double one_norm = 0.0;  // working convention
};

ProblemSetup make_problem(const LCUHamiltonian& full, const StateSpec& state, bool drop_identity);
ProblemSetup load_problem(const std::string& hamiltonian_path, const std::string& init_path,
                          bool drop_identity);

/// Planner inputs; either resolved from a ProblemSetup or given as scalars.
struct PlanInputs {
  TimeStepStrategy strategy = LCUOneNorm{};
  double epsilon_chem = kChemicalAccuracy;
  int a = 0;
  double e_init = 0.0;
  double one_norm = 0.0;
  double identity_shift = 0.0;  // subtracted from e_init before the strategy
  int trotter_order = 1;
  std::optional<double> c_p;         // commutator constant, if known
  std::optional<double> script_c_p;  // dimensionless constant, if given directly
  std::vector<std::string> extra_notes;
};

struct PlanResult {
  QPEPlan plan;
  std::optional<TrotterBudget> budget;
  double e_init_used = 0.0;
  double one_norm_used = 0.0;
  double identity_shift = 0.0;
};

PlanResult build_plan(const PlanInputs& inputs);

/// Table-style one-line summary: t, ceil(E_init t), N_min, n_min(0,t),
/// n_min-tot.
std::string plan_summary_line(const PlanResult& result);

/// Distribution analysis at a fixed N, plus the a-sweep window report
/// (each a evaluated at its own N = N_min + a).
struct WindowRow {
  int a = 0;
  int n_phase = 0;
  long long e = 0;
  std::int64_t l0 = 0;
  double window_prob = 0.0;
  double lower_bound = 0.0;  // |c0|^2 times the window constant
};

struct DistributionArtifacts {
  int n_phase = 0;
  double t = 0.0;
  PhaseTable table;
  PhaseDistribution dist;
  LambdaReport lambdas;
  InitialStateReport conditions;
  PostMeasurementState post_at_l_star;
  std::vector<WindowRow> windows;
};

DistributionArtifacts analyze_distribution(const ProblemSetup& setup, const QPEPlan& plan,
                                           int n_phase, std::span<const int> a_sweep);

/// One sweep cell: strategy x N x Trotter multiplier (multiplier 0 runs the
/// exact unitary). Energies are reported in the full convention (identity
/// shift added back); fidelity is against the exact ground state.
struct SweepPoint {
  std::string strategy;
  double t = 0.0;
  int n_phase = 0;
  long long multiplier = 0;
  std::int64_t l_star = 0;
  double energy = 0.0;
  double abs_error = 0.0;
  double fidelity = 0.0;
  bool chem_accurate = false;
  bool first_order_regime_exceeded = false;
};

std::vector<SweepPoint> run_sweep(const ProblemSetup& setup, const PlanResult& plan,
                                  double exact_e0, std::span<const int> n_values,
                                  std::span<const long long> multipliers, int trotter_order);

/// Per-q Trotter error rows (n = multiplier * 2^q), the trotterizer's sweep
/// export.
struct TrotterErrorRow {
  int order = 0;
  long long steps = 0;
  int power = 0;
  double spectral_error = 0.0;
  double bound = 0.0;
  double max_phase_error = 0.0;
};

std::vector<TrotterErrorRow> trotter_error_sweep(const ProblemSetup& setup, double t,
                                                 int trotter_order, long long multiplier,
                                                 int q_count, std::optional<double> c_p);

/// Shot planning and empirical verification per a in the sweep.
struct ShotsRow {
  int a = 0;
  int n_phase = 0;
  bool identifiable = false;
  double delta_gap = 0.0;
  std::int64_t l_star = 0;
  long long m_eps = 0;
  long long trials = 0;
  long long failures = 0;
  double failure_rate = 0.0;
};

struct SelectARow {
  int a = 0;
  int n_phase = 0;
  long long e = 0;
  long long probe_shots = 0;
  std::int64_t empirical_top = 0;
  double window_prob = 0.0;   // around the empirical top, half-width e
  double spread = 0.0;        // rms bin distance from the top, in l/2^N units
};

struct ShotsArtifacts {
  std::vector<ShotsRow> rows;
  int histogram_n_phase = 0;
  ShotRecord histogram;
  bool select_a = false;
  int chosen_a = 0;
  std::vector<SelectARow> ranking;
};

ShotsArtifacts run_shots(const ProblemSetup& setup, const QPEPlan& plan,
                         std::span<const int> a_sweep, double epsilon_shots, long long trials,
                         std::uint64_t seed, bool select_a, long long probe_shots);

}  // namespace qpe
