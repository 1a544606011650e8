#pragma once

#include <string>
#include <variant>
#include <vector>

namespace qpe {

/// Chemical accuracy, the default energy target (Hartree).
inline constexpr double kChemicalAccuracy = 1.6e-3;

/// Time-step strategies. Each fixes t so that ceil(E_0 t) is known a priori:
///  - KnownGapOrder: t = 10^d from a trusted order of magnitude of
///    Delta E = E_0 - E_init (gives ceil(E_0 t) = ceil(E_init t)).
///  - InitEnergy: t = -alpha / E_init, alpha in [1, 3/2] (gives ceil = -1,
///    valid while Delta E / E_init stays below 2/alpha - 1).
///  - LCUOneNorm: t = alpha / sum_b |gamma_b|, alpha in (0, 1] (gives
///    ceil = 0; needs no prior knowledge of the spectrum).
struct KnownGapOrder {
  int d = 0;
};
struct InitEnergy {
  double alpha = 1.5;
};
struct LCUOneNorm {
  double alpha = 0.5;
};
using TimeStepStrategy = std::variant<KnownGapOrder, InitEnergy, LCUOneNorm>;

std::string strategy_name(const TimeStepStrategy& strategy);

struct TimeStep {
  double t = 0.0;
  long long ceil_e0_t = 0;
  std::string note;
};

/// Applies one strategy. E_init is required for KnownGapOrder and
/// InitEnergy, the LCU one-norm for LCUOneNorm; alpha limits are enforced.
TimeStep select_time_step(const TimeStepStrategy& strategy, double e_init, double one_norm);

/// N_min(t) = ceil(log2(1 / (t epsilon))) - 1, the fewest phase qubits for
/// which the bin width guarantees |E_hat - E| <= 1/(2^{N+1} t) <= epsilon.
/// The ceil(log2) is decided by exact power-of-two comparisons so ratios
/// that land on a power of two are never off by one.
int min_phase_qubits(double t, double epsilon);

/// e = 0 for a = 0, else 2^{a-1} - 1: every bin in the +-e window around the
/// ground bin reconstructs the energy within chemical accuracy.
long long accuracy_window(int a);

/// One-sided window extents before symmetrization:
/// e1 = floor(2^{a-1} - sign*kappa/2), e2 = floor(2^{a-1} + sign*kappa/2).
struct AsymmetricWindow {
  long long e1 = 0;
  long long e2 = 0;
};
AsymmetricWindow asymmetric_window(int a, double kappa, int sign);

/// m_eps = ceil(-2 ln(eps) / Delta^2): shots so that the top bin is the most
/// frequent outcome with probability at least 1 - eps (Hoeffding bound).
/// The ceiling is always applied. Requires eps in (0,1), Delta in (0,1].
long long shot_budget(double epsilon, double delta_gap);

/// Trotter-step budgets for every controlled power U^{2^q}.
struct TrotterBudget {
  int order = 1;                        // p
  double c_p = 0.0;                     // commutator constant, Hartree^{p+1}
  double script_c_p = 0.0;              // pi (|C_p| / eps^{p+1})^{1/p}
  std::vector<long long> n_min_per_q;   // q = 0 .. N_min + a - 1
  long long n_min_tot = 0;              // exact sum over q
  long long n_min_tot_approx = 0;       // ceil(2^a script_c_p)
  std::vector<std::string> notes;
};

/// From the commutator constant C_p (p in {1,2}).
TrotterBudget trotter_budget(int order, double c_p, int n_min, int a, double epsilon);

/// From script-C_p directly (when the dimensionless constant is the given
/// quantity, passing it through C_p and back would round).
TrotterBudget trotter_budget_from_script(int order, double script_c_p, int n_min, int a,
                                         double epsilon);

/// Spectral-norm tolerance pi / 2^{N_min - q} on the approximation of
/// U^{2^q}; first-order reasoning only, so values at q >= N_min are outside
/// the derivation's regime.
double unitary_error_tolerance(int q, int n_min);

/// E_hat = -(l / 2^N) / t + ceil(E_0 t) / t.
double reconstruct_energy(long long l, int n_phase, double t, long long ceil_e0_t);

/// Everything the downstream stages need, bundled.
struct QPEPlan {
  std::string strategy;
  double t = 0.0;
  long long ceil_e0_t = 0;
  int n_min = 0;
  int a = 0;
  long long e = 0;
  double epsilon_chem = kChemicalAccuracy;
  std::vector<std::string> notes;
};

QPEPlan make_plan(const TimeStepStrategy& strategy, double e_init, double one_norm,
                  double epsilon_chem, int a);

}  // namespace qpe
