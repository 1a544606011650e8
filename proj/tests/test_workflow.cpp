#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "qpe/errors.hpp"
#include "qpe/report.hpp"
#include "qpe/workflow.hpp"

using namespace qpe;

namespace {

const char* kToyHam = "-0.39 II\n-0.2 ZI\n0.3 IZ\n0.15 ZZ\n0.05 XX\n0.05 YY\n";

ProblemSetup toy_problem(bool drop_identity) {
  StateSpec spec;
  spec.source = StateSource::BasisIndex;
  spec.basis_index = 1;
  return make_problem(parse_lcu(kToyHam), spec, drop_identity);
}

}  // namespace

TEST_CASE("identity drop shifts energies and the one-norm consistently") {
  const ProblemSetup full = toy_problem(false);
  const ProblemSetup dropped = toy_problem(true);
  CHECK(dropped.identity_shift == doctest::Approx(-0.39));
  CHECK(full.one_norm == doctest::Approx(dropped.one_norm + 0.39));
  CHECK(full.spectrum.energies[0] ==
        doctest::Approx(dropped.spectrum.energies[0] + dropped.identity_shift).epsilon(1e-10));
  CHECK(full.e_init == doctest::Approx(dropped.e_init + dropped.identity_shift).epsilon(1e-10));
  // overlaps are unaffected by a constant shift
  for (std::size_t j = 0; j < 4; ++j)
    CHECK(std::norm(full.init.overlaps[j]) ==
          doctest::Approx(std::norm(dropped.init.overlaps[j])).epsilon(1e-9));
}

TEST_CASE("build_plan applies the explicit energy shift") {
  PlanInputs inputs;
  inputs.strategy = InitEnergy{1.5};
  inputs.e_init = -1.042996;
  inputs.identity_shift = 1.058354;
  inputs.one_norm = 0.0;
  const PlanResult result = build_plan(inputs);
  CHECK(result.e_init_used == doctest::Approx(-2.10135).epsilon(1e-6));
  CHECK(result.plan.t == doctest::Approx(0.713827).epsilon(1e-6));
  CHECK(result.plan.n_min == 9);
  CHECK(result.plan.ceil_e0_t == -1);
}

TEST_CASE("plan JSON re-derives to itself") {
  PlanInputs inputs;
  inputs.strategy = LCUOneNorm{0.5};
  inputs.one_norm = 2.32397;
  inputs.a = 2;
  inputs.script_c_p = 6e4;
  const PlanResult result = build_plan(inputs);
  const std::string text = plan_to_json(result);

  const auto doc = nlohmann::json::parse(text);
  const double t = doc.at("t").get<double>();
  CHECK(t == result.plan.t);  // bit-exact round trip
  CHECK(min_phase_qubits(t, doc.at("epsilon_chem").get<double>()) == doc.at("n_min").get<int>());
  CHECK(accuracy_window(doc.at("a").get<int>()) == doc.at("e").get<long long>());
  const auto budget = doc.at("trotter");
  const TrotterBudget rebuilt = trotter_budget_from_script(
      budget.at("order").get<int>(), budget.at("script_c_p").get<double>(),
      doc.at("n_min").get<int>(), doc.at("a").get<int>(), doc.at("epsilon_chem").get<double>());
  CHECK(rebuilt.n_min_per_q == budget.at("n_min_per_q").get<std::vector<long long>>());
  CHECK(rebuilt.n_min_tot == budget.at("n_min_tot").get<long long>());
}

TEST_CASE("plan summary carries the table fields") {
  PlanInputs inputs;
  inputs.strategy = KnownGapOrder{1};
  inputs.e_init = -1.042996;
  inputs.script_c_p = 6e4;
  const PlanResult result = build_plan(inputs);
  const std::string line = plan_summary_line(result);
  CHECK(line.find("t=10") != std::string::npos);
  CHECK(line.find("ceil(E_init*t)=-10") != std::string::npos);
  CHECK(line.find("N_min=5") != std::string::npos);
  CHECK(line.find("n_min(0,t)=1875") != std::string::npos);
  CHECK(line.find("n_min_tot~=60000") != std::string::npos);
}

TEST_CASE("distribution artifacts expose the window sweep") {
  const ProblemSetup setup = toy_problem(false);
  PlanInputs inputs;
  inputs.strategy = LCUOneNorm{0.5};
  inputs.e_init = setup.e_init;
  inputs.one_norm = setup.one_norm;
  const PlanResult plan = build_plan(inputs);
  const std::vector<int> a_sweep = {0, 1, 2, 3};
  const DistributionArtifacts art =
      analyze_distribution(setup, plan.plan, plan.plan.n_min, a_sweep);
  CHECK(art.dist.probs.size() == std::size_t{1} << plan.plan.n_min);
  REQUIRE(art.windows.size() == 4);
  for (const auto& row : art.windows) {
    CHECK(row.window_prob >= row.lower_bound - 1e-10);
    CHECK(row.window_prob <= 1.0 + 1e-10);
  }
  // windows get wider and the captured mass does not collapse
  CHECK(art.windows[3].e == 3);
  // diagnostics JSON serializes without throwing and mentions the key blocks
  const std::string json_text = diagnostics_to_json(art, setup);
  CHECK(json_text.find("\"windows\"") != std::string::npos);
  CHECK(json_text.find("\"post_measurement\"") != std::string::npos);
}

TEST_CASE("sweep: exact mode hits the discretization bound for N >= N_min") {
  const ProblemSetup setup = toy_problem(false);
  PlanInputs inputs;
  inputs.strategy = LCUOneNorm{0.5};
  inputs.e_init = setup.e_init;
  inputs.one_norm = setup.one_norm;
  const PlanResult plan = build_plan(inputs);
  std::vector<int> n_values;
  for (int n = plan.plan.n_min; n <= plan.plan.n_min + 3; ++n) n_values.push_back(n);
  const std::vector<long long> multipliers = {0};
  const double exact_e0 = setup.spectrum.energies[0] + setup.identity_shift;
  const auto points = run_sweep(setup, plan, exact_e0, n_values, multipliers, 1);
  REQUIRE(points.size() == n_values.size());
  for (const auto& point : points) {
    CHECK(point.abs_error <=
          1.0 / (std::ldexp(1.0, point.n_phase + 1) * point.t) + 1e-12);
    CHECK(point.chem_accurate);
    CHECK(point.fidelity > 0.9);
  }
}

TEST_CASE("sweep: commuting Hamiltonian is multiplier-independent") {
  StateSpec state;
  state.source = StateSource::BasisIndex;
  state.basis_index = 1;
  const ProblemSetup setup = make_problem(parse_lcu("-0.45 ZI\n0.3 IZ\n0.1 ZZ"), state, false);
  PlanInputs inputs;
  inputs.strategy = LCUOneNorm{0.5};
  inputs.e_init = setup.e_init;
  inputs.one_norm = setup.one_norm;
  const PlanResult plan = build_plan(inputs);
  const std::vector<int> n_values = {3, 5, 7};
  const std::vector<long long> multipliers = {0, 1, 10};
  const double exact_e0 = setup.spectrum.energies[0];
  const auto points = run_sweep(setup, plan, exact_e0, n_values, multipliers, 1);
  REQUIRE(points.size() == 9);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(points[i].abs_error == doctest::Approx(points[i + 3].abs_error).epsilon(1e-10));
    CHECK(points[i].abs_error == doctest::Approx(points[i + 6].abs_error).epsilon(1e-10));
    CHECK(points[i].fidelity == doctest::Approx(points[i + 3].fidelity).epsilon(1e-9));
  }
}

TEST_CASE("trotter error sweep rows scale with q") {
  const ProblemSetup setup = toy_problem(false);
  const auto rows = trotter_error_sweep(setup, 0.4, 1, 10, 4, std::nullopt);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row.spectral_error <= row.bound * (1.0 + 1e-9) + 1e-12);
    CHECK(row.steps == 10ll << row.power);
  }
  const std::string csv = trotter_errors_to_csv(rows);
  CHECK(csv.find("p,n,q,spectral_error,bound,max_phase_error") == 0);
}

TEST_CASE("shots workflow honors the a sweep and select-a ranking") {
  const ProblemSetup setup = toy_problem(false);
  PlanInputs inputs;
  inputs.strategy = LCUOneNorm{0.5};
  inputs.e_init = setup.e_init;
  inputs.one_norm = setup.one_norm;
  const PlanResult plan = build_plan(inputs);
  const std::vector<int> a_sweep = {0, 1, 2, 3};
  const ShotsArtifacts art =
      run_shots(setup, plan.plan, a_sweep, 0.1, 50, 321, true, 50);
  REQUIRE(art.rows.size() == 4);
  for (const auto& row : art.rows) {
    if (!row.identifiable) continue;
    CHECK(row.m_eps == shot_budget(0.1, row.delta_gap));
    CHECK(row.failure_rate <= 1.0);
  }
  REQUIRE(art.ranking.size() == 4);
  for (std::size_t i = 1; i < art.ranking.size(); ++i)
    CHECK(art.ranking[i - 1].window_prob >= art.ranking[i].window_prob - 1e-12);
  CHECK(art.chosen_a == art.ranking.front().a);
  // shots JSON mentions the generator identity
  const std::string json_text = shots_to_json(art, 0.1, 321);
  CHECK(json_text.find("splitmix64") != std::string::npos);
}

TEST_CASE("shots: mirrored equal-weight peaks are reported as not identifiable") {
  // theta pair {0.25, 0.75} with equal weights: the distribution is an exact
  // mirror, so delta_gap is 0 at every N
  StateSpec state;
  state.source = StateSource::ComputationalAmplitudes;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  state.entries.emplace_back(0, cplx{inv_sqrt2, 0.0});
  state.entries.emplace_back(1, cplx{inv_sqrt2, 0.0});
  const ProblemSetup setup = make_problem(parse_lcu("0.25 Z"), state, false);
  PlanInputs inputs;
  inputs.strategy = LCUOneNorm{0.25};  // t = 1
  inputs.e_init = setup.e_init;
  inputs.one_norm = setup.one_norm;
  const PlanResult plan = build_plan(inputs);
  CHECK(plan.plan.t == doctest::Approx(1.0));
  const std::vector<int> a_sweep = {0, 1};
  const ShotsArtifacts art = run_shots(setup, plan.plan, a_sweep, 0.1, 20, 5, false, 50);
  REQUIRE(art.rows.size() == 2);
  for (const auto& row : art.rows) {
    CHECK_FALSE(row.identifiable);
    CHECK(row.delta_gap == 0.0);
  }
  const std::string json_text = shots_to_json(art, 0.1, 5);
  CHECK(json_text.find("not identifiable") != std::string::npos);
}

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -1.6e-3, 0.0, 123456789.123456789}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}
