#include "qpe/planner.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qpe/errors.hpp"

namespace qpe {

namespace {
constexpr double kPi = std::numbers::pi;

std::string format_g(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}
}  // namespace

std::string strategy_name(const TimeStepStrategy& strategy) {
  if (std::holds_alternative<KnownGapOrder>(strategy)) return "known-gap";
  if (std::holds_alternative<InitEnergy>(strategy)) return "init-energy";
  return "lcu-norm";
}

TimeStep select_time_step(const TimeStepStrategy& strategy, double e_init, double one_norm) {
  TimeStep out;
  if (const auto* gap = std::get_if<KnownGapOrder>(&strategy)) {
    out.t = std::pow(10.0, gap->d);
    out.ceil_e0_t = static_cast<long long>(std::ceil(e_init * out.t));
    out.note = "t=10^" + std::to_string(gap->d) +
               " assumes Delta E <= -10^-" + std::to_string(gap->d + 1) +
               "; this tool cannot verify that assumption. ceil(E0 t) taken as ceil(E_init t).";
    return out;
  }
  if (const auto* init = std::get_if<InitEnergy>(&strategy)) {
    if (!(init->alpha >= 1.0 && init->alpha <= 1.5))
      throw DomainError("init-energy strategy needs alpha in [1, 3/2]");
    if (!(e_init < 0.0)) throw DomainError("init-energy strategy needs E_init < 0");
    out.t = -init->alpha / e_init;
    out.ceil_e0_t = -1;
    const double bound = 2.0 / init->alpha - 1.0;
    out.note = "valid while Delta E / E_init < " + format_g(bound) +
               " (inaccuracy bound for alpha=" + format_g(init->alpha) + ")";
    return out;
  }
  const auto& lcu = std::get<LCUOneNorm>(strategy);
  if (!(lcu.alpha > 0.0 && lcu.alpha <= 1.0))
    throw DomainError("lcu-norm strategy needs alpha in (0, 1]");
  if (!(one_norm > 0.0)) throw DomainError("lcu-norm strategy needs a positive one-norm");
  out.t = lcu.alpha / one_norm;
  out.ceil_e0_t = 0;
  out.note = "ceil(E0 t) = 0 since sum_b |gamma_b| >= ||H|| >= |E0|";
  return out;
}

int min_phase_qubits(double t, double epsilon) {
  if (!(t > 0.0)) throw DomainError("min_phase_qubits needs t > 0");
  if (!(epsilon > 0.0)) throw DomainError("min_phase_qubits needs epsilon > 0");
  const double ratio = 1.0 / (t * epsilon);
  int k = std::ilogb(ratio);
  if (std::ldexp(1.0, k) < ratio) ++k;  // smallest k with 2^k >= ratio
  const int n_min = k - 1;
  if (n_min < 1)
    throw DomainError("t*epsilon >= 0.5: the accuracy target needs no phase qubits at this t");
  return n_min;
}

long long accuracy_window(int a) {
  if (a < 0) throw DomainError("extra-qubit count a must be non-negative");
  if (a == 0) return 0;
  return (1ll << (a - 1)) - 1;
}

AsymmetricWindow asymmetric_window(int a, double kappa, int sign) {
  if (a < 1) throw DomainError("asymmetric_window needs a >= 1");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("kappa must lie in [0, 1]");
  if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
  const double half = std::ldexp(1.0, a - 1);
  AsymmetricWindow w;
  w.e1 = static_cast<long long>(std::floor(half - sign * kappa / 2.0));
  w.e2 = static_cast<long long>(std::floor(half + sign * kappa / 2.0));
  return w;
}

long long shot_budget(double epsilon, double delta_gap) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("shot budget needs epsilon in (0, 1)");
  if (!(delta_gap > 0.0 && delta_gap <= 1.0))
    throw DomainError("shot budget needs delta_gap in (0, 1]: the top bin is not statistically "
                      "identifiable otherwise");
  return static_cast<long long>(std::ceil(-2.0 * std::log(epsilon) / (delta_gap * delta_gap)));
}

namespace {

TrotterBudget budget_from(int order, double c_p, double script, int n_min, int a, double epsilon) {
  if (order != 1 && order != 2) throw DomainError("Trotter order must be 1 or 2");
  if (!(script > 0.0)) throw DomainError("Trotter budget needs a positive constant");
  if (!(epsilon > 0.0)) throw DomainError("Trotter budget needs epsilon > 0");
  if (n_min < 1 || a < 0) throw DomainError("Trotter budget needs n_min >= 1 and a >= 0");
  TrotterBudget b;
  b.order = order;
  b.c_p = c_p;
  b.script_c_p = script;
  b.n_min_per_q.reserve(n_min + a);
  long long total = 0;
  for (int q = 0; q < n_min + a; ++q) {
    // 2^{q - n_min} * script, scaled exactly
    const long long steps = static_cast<long long>(std::ceil(std::ldexp(script, q - n_min)));
    b.n_min_per_q.push_back(steps);
    total += steps;
  }
  b.n_min_tot = total;
  b.n_min_tot_approx = static_cast<long long>(std::ceil(std::ldexp(script, a)));
  if (a >= 1)
    b.notes.push_back("unitary tolerance is first-order only; q >= N_min entries extrapolate it");
  return b;
}

}  // namespace

TrotterBudget trotter_budget(int order, double c_p, int n_min, int a, double epsilon) {
  if (!(c_p > 0.0)) throw DomainError("Trotter budget needs C_p > 0");
  const double script = kPi * std::pow(c_p / std::pow(epsilon, order + 1), 1.0 / order);
  return budget_from(order, c_p, script, n_min, a, epsilon);
}

TrotterBudget trotter_budget_from_script(int order, double script_c_p, int n_min, int a,
                                         double epsilon) {
  if (!(script_c_p > 0.0)) throw DomainError("Trotter budget needs script-C_p > 0");
  const double c_p = std::pow(script_c_p / kPi, order) * std::pow(epsilon, order + 1);
  return budget_from(order, c_p, script_c_p, n_min, a, epsilon);
}

double unitary_error_tolerance(int q, int n_min) {
  if (q < 0 || n_min < 1) throw DomainError("unitary_error_tolerance needs q >= 0, n_min >= 1");
  return std::ldexp(kPi, q - n_min);
}

double reconstruct_energy(long long l, int n_phase, double t, long long ceil_e0_t) {
  if (n_phase < 1 || n_phase > 62) throw DomainError("phase-qubit count out of range");
  if (l < 0 || l >= (1ll << n_phase)) throw DomainError("phase value out of range for N qubits");
  if (!(t > 0.0)) throw DomainError("reconstruct_energy needs t > 0");
  const double fraction = std::ldexp(static_cast<double>(l), -n_phase);
  return (static_cast<double>(ceil_e0_t) - fraction) / t;
}

QPEPlan make_plan(const TimeStepStrategy& strategy, double e_init, double one_norm,
                  double epsilon_chem, int a) {
  if (a < 0) throw DomainError("extra-qubit count a must be non-negative");
  const TimeStep step = select_time_step(strategy, e_init, one_norm);
  QPEPlan plan;
  plan.strategy = strategy_name(strategy);
  plan.t = step.t;
  plan.ceil_e0_t = step.ceil_e0_t;
  plan.n_min = min_phase_qubits(step.t, epsilon_chem);
  plan.a = a;
  plan.e = accuracy_window(a);
  plan.epsilon_chem = epsilon_chem;
  plan.notes.push_back(step.note);
  return plan;
}

}  // namespace qpe
