#include "qpe/workflow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qpe/errors.hpp"
#include "qpe/kernel.hpp"

namespace qpe {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ProblemSetup make_problem(const LCUHamiltonian& full, const StateSpec& state, bool drop_identity) {
  ProblemSetup setup;
  setup.drop_identity = drop_identity;
  if (drop_identity) {
    IdentitySplit split = split_identity(full);
    setup.identity_shift = split.shift;
    setup.hamiltonian = std::move(split.remainder);
  } else {
    setup.hamiltonian = full;
  }
  setup.spectrum = diagonalize(dense_matrix(setup.hamiltonian));
  setup.init = overlaps(setup.spectrum, state);
  setup.e_init = expectation_energy(setup.spectrum, setup.init);
  setup.one_norm = one_norm(setup.hamiltonian);
  return setup;
}

ProblemSetup load_problem(const std::string& hamiltonian_path, const std::string& init_path,
                          bool drop_identity) {
  return make_problem(load_hamiltonian(hamiltonian_path), load_state_spec(init_path),
                      drop_identity);
}

PlanResult build_plan(const PlanInputs& inputs) {
  PlanResult result;
  result.e_init_used = inputs.e_init - inputs.identity_shift;
  result.one_norm_used = inputs.one_norm;
  result.identity_shift = inputs.identity_shift;
  result.plan = make_plan(inputs.strategy, result.e_init_used, result.one_norm_used,
                          inputs.epsilon_chem, inputs.a);
  for (const auto& note : inputs.extra_notes) result.plan.notes.push_back(note);
  if (inputs.identity_shift != 0.0)
    result.plan.notes.push_back("identity shift of " + std::to_string(inputs.identity_shift) +
                                " Ha excluded from phase evolution; reported energies add it back");
  if (inputs.script_c_p) {
    result.budget = trotter_budget_from_script(inputs.trotter_order, *inputs.script_c_p,
                                               result.plan.n_min, inputs.a, inputs.epsilon_chem);
  } else if (inputs.c_p && *inputs.c_p > 0.0) {
    result.budget = trotter_budget(inputs.trotter_order, *inputs.c_p, result.plan.n_min, inputs.a,
                                   inputs.epsilon_chem);
  } else if (inputs.c_p) {
    result.plan.notes.push_back(
        "C_1 = 0 (all terms commute): a single Trotter step per unitary is exact");
  }
  return result;
}

std::string plan_summary_line(const PlanResult& result) {
  const QPEPlan& plan = result.plan;
  const long long ceil_init =
      static_cast<long long>(std::ceil(result.e_init_used * plan.t));
  std::ostringstream os;
  os.precision(10);
  os << plan.strategy << ": t=" << plan.t << " ceil(E0*t)=" << plan.ceil_e0_t
     << " ceil(E_init*t)=" << ceil_init << " N_min=" << plan.n_min;
  if (result.budget) {
    os << " n_min(0,t)=" << result.budget->n_min_per_q.front()
       << " n_min_tot=" << result.budget->n_min_tot
       << " n_min_tot~=" << result.budget->n_min_tot_approx;
  }
  return os.str();
}

DistributionArtifacts analyze_distribution(const ProblemSetup& setup, const QPEPlan& plan,
                                           int n_phase, std::span<const int> a_sweep) {
  DistributionArtifacts art;
  art.n_phase = n_phase;
  art.t = plan.t;
  art.table = make_phase_table(setup.spectrum, setup.init, plan.t, n_phase);
  art.dist = phase_distribution(art.table);
  const std::int64_t l0 = nearest_bin(art.table.thetas[0], n_phase).index;
  art.lambdas = lambda_ratios(art.table, l0);
  art.conditions = initial_state_diagnostics(art.table, setup.init.overlaps);
  art.post_at_l_star = post_measurement(art.table, setup.init.overlaps, art.dist.l_star);

  const double c0_sq = std::norm(setup.init.overlaps[0]);
  for (int a : a_sweep) {
    const int n_a = plan.n_min + a;
    if (a < 0 || n_a > kMaxPhaseQubits) continue;
    const PhaseTable table_a = make_phase_table(setup.spectrum, setup.init, plan.t, n_a);
    const PhaseDistribution dist_a = phase_distribution(table_a);
    WindowRow row;
    row.a = a;
    row.n_phase = n_a;
    row.e = accuracy_window(a);
    row.l0 = nearest_bin(table_a.thetas[0], n_a).index;
    const WindowProbability window = window_probability_with_bound(dist_a, row.l0, row.e, c0_sq);
    row.window_prob = window.sum;
    row.lower_bound = window.lower_bound;
    art.windows.push_back(row);
  }
  return art;
}

std::vector<SweepPoint> run_sweep(const ProblemSetup& setup, const PlanResult& plan,
                                  double exact_e0, std::span<const int> n_values,
                                  std::span<const long long> multipliers, int trotter_order) {
  std::vector<SweepPoint> points;
  const Spectrum& s = setup.spectrum;
  for (long long mult : multipliers) {
    std::optional<TrotterizedQPE> trotterized;
    double regime_phase_error = 0.0;
    for (int n_phase : n_values) {
      if (n_phase < 1 || n_phase > kMaxPhaseQubits) continue;
      SweepPoint point;
      point.strategy = plan.plan.strategy;
      point.t = plan.plan.t;
      point.n_phase = n_phase;
      point.multiplier = mult;

      PhaseDistribution dist;
      if (mult == 0) {
        const PhaseTable table = make_phase_table(s, setup.init, plan.plan.t, n_phase);
        dist = phase_distribution(table);
        point.l_star = dist.l_star;
        point.fidelity =
            post_measurement(table, setup.init.overlaps, dist.l_star).ground_weight;
      } else {
        if (!trotterized) {
          const TrotterSpec spec = make_trotter_spec(setup.hamiltonian, trotter_order, mult, 0,
                                                     plan.plan.t);
          trotterized = trotterized_qpe(setup.hamiltonian, s, setup.init, spec, n_phase);
          regime_phase_error = max_phase_error(trotterized->spectrum, s, plan.plan.t);
        }
        PhaseTable table = trotterized->table;
        table.n_phase = n_phase;
        dist = phase_distribution(table);
        point.l_star = dist.l_star;
        const PostMeasurementState post =
            post_measurement(table, trotterized->overlaps_eff, dist.l_star);
        cplx ground{0.0, 0.0};
        for (std::size_t k = 0; k < post.coeffs.size(); ++k)
          ground += trotterized->spectrum.overlaps(0, k) * post.coeffs[k];
        point.fidelity = std::norm(ground);
        point.first_order_regime_exceeded =
            kTwoPi * std::ldexp(regime_phase_error, n_phase - 1) > 0.5;
      }
      point.energy = reconstruct_energy(point.l_star, n_phase, plan.plan.t, plan.plan.ceil_e0_t) +
                     setup.identity_shift;
      point.abs_error = std::abs(point.energy - exact_e0);
      point.chem_accurate = point.abs_error <= plan.plan.epsilon_chem;
      points.push_back(std::move(point));
    }
  }
  return points;
}

std::vector<TrotterErrorRow> trotter_error_sweep(const ProblemSetup& setup, double t,
                                                 int trotter_order, long long multiplier,
                                                 int q_count, std::optional<double> c_p) {
  if (multiplier < 1) throw DomainError("Trotter error sweep needs a multiplier >= 1");
  std::vector<TrotterErrorRow> rows;
  const TrotterSpec base =
      make_trotter_spec(setup.hamiltonian, trotter_order, multiplier, 0, t);
  const EffectiveSpectrum eff = effective_spectrum(setup.hamiltonian, setup.spectrum, base);
  for (int q = 0; q < q_count; ++q) {
    TrotterSpec spec = base;
    spec.power = q;
    spec.steps = multiplier << q;  // n(q, t) = multiplier * 2^q
    const TrotterErrorReport report =
        trotter_error(setup.hamiltonian, setup.spectrum, spec, c_p.value_or(-1.0));
    TrotterErrorRow row;
    row.order = trotter_order;
    row.steps = spec.steps;
    row.power = q;
    row.spectral_error = report.error;
    row.bound = report.bound;
    // S(U^{2^q}, m 2^q) = S(U, m)^{2^q}, so the q-level phases are 2^q phi mod 1.
    double worst = 0.0;
    for (std::size_t j = 0; j < eff.phases.size(); ++j) {
      const double phi_q = std::ldexp(eff.phases[j], q);
      const double theta_q =
          std::ldexp(phase_of_energy(setup.spectrum.energies[j], t), q);
      double d = std::abs((phi_q - std::floor(phi_q)) - (theta_q - std::floor(theta_q)));
      d = std::min(d, 1.0 - d);
      worst = std::max(worst, d);
    }
    row.max_phase_error = worst;
    rows.push_back(row);
  }
  return rows;
}

ShotsArtifacts run_shots(const ProblemSetup& setup, const QPEPlan& plan,
                         std::span<const int> a_sweep, double epsilon_shots, long long trials,
                         std::uint64_t seed, bool select_a, long long probe_shots) {
  ShotsArtifacts art;
  bool histogram_done = false;
  int row_index = 0;
  for (int a : a_sweep) {
    const int n_phase = plan.n_min + a;
    if (a < 0 || n_phase > kMaxPhaseQubits) continue;
    const PhaseTable table = make_phase_table(setup.spectrum, setup.init, plan.t, n_phase);
    const PhaseDistribution dist = phase_distribution(table);
    ShotsRow row;
    row.a = a;
    row.n_phase = n_phase;
    row.delta_gap = dist.delta_gap;
    row.l_star = dist.l_star;
    row.identifiable = dist.delta_gap > 0.0;
    const std::uint64_t row_seed =
        seed + static_cast<std::uint64_t>(row_index) * static_cast<std::uint64_t>(trials + 1);
    if (row.identifiable) {
      const HoeffdingResult hoeffding = hoeffding_trial(dist, epsilon_shots, trials, row_seed);
      row.m_eps = hoeffding.m_eps;
      row.trials = hoeffding.trials;
      row.failures = hoeffding.failures;
      row.failure_rate = hoeffding.failure_rate;
    }
    if (!histogram_done) {
      art.histogram_n_phase = n_phase;
      art.histogram =
          sample_shots(dist, row.identifiable ? row.m_eps : probe_shots, seed);
      histogram_done = true;
    }
    art.rows.push_back(row);
    ++row_index;
  }

  if (select_a) {
    art.select_a = true;
    int probe_index = 0;
    for (int a : a_sweep) {
      const int n_phase = plan.n_min + a;
      if (a < 0 || n_phase > kMaxPhaseQubits) continue;
      const PhaseTable table = make_phase_table(setup.spectrum, setup.init, plan.t, n_phase);
      const PhaseDistribution dist = phase_distribution(table);
      const std::uint64_t probe_seed = seed + 0x51a5u + static_cast<std::uint64_t>(probe_index);
      const ShotRecord probe = sample_shots(dist, probe_shots, probe_seed);
      SelectARow row;
      row.a = a;
      row.n_phase = n_phase;
      row.e = accuracy_window(a);
      row.probe_shots = probe_shots;
      row.empirical_top = probe.empirical_top;
      row.window_prob = window_probability(dist, probe.empirical_top, row.e);
      const std::int64_t bins = std::int64_t{1} << n_phase;
      double spread_sq = 0.0;
      for (std::int64_t l = 0; l < bins; ++l) {
        if (probe.counts[l] == 0) continue;
        double d = std::abs(static_cast<double>(l - probe.empirical_top)) /
                   static_cast<double>(bins);
        d = std::min(d, 1.0 - d);
        spread_sq += static_cast<double>(probe.counts[l]) * d * d;
      }
      row.spread = std::sqrt(spread_sq / static_cast<double>(probe.shots));
      art.ranking.push_back(row);
      ++probe_index;
    }
    std::stable_sort(art.ranking.begin(), art.ranking.end(),
                     [](const SelectARow& lhs, const SelectARow& rhs) {
                       if (lhs.window_prob != rhs.window_prob)
                         return lhs.window_prob > rhs.window_prob;
                       if (lhs.spread != rhs.spread) return lhs.spread < rhs.spread;
                       return lhs.a < rhs.a;
                     });
    if (!art.ranking.empty()) art.chosen_a = art.ranking.front().a;
  }
  return art;
}

}  // namespace qpe
