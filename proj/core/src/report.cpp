#include "qpe/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "qpe/errors.hpp"
#include "qpe/kernel.hpp"

namespace qpe {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Trim to the shortest form that still parses back exactly.
  for (int precision = 1; precision < 17; ++precision) {
    char probe[32];
    std::snprintf(probe, sizeof(probe), "%.*g", precision, v);
    if (std::strtod(probe, nullptr) == v) return probe;
  }
  return buf;
}

std::string plan_to_json(const PlanResult& result) {
  const QPEPlan& plan = result.plan;
  json doc;
  doc["strategy"] = plan.strategy;
  doc["t"] = plan.t;
  doc["ceil_e0_t"] = plan.ceil_e0_t;
  doc["n_min"] = plan.n_min;
  doc["a"] = plan.a;
  doc["e"] = plan.e;
  doc["epsilon_chem"] = plan.epsilon_chem;
  doc["e_init"] = result.e_init_used;
  doc["one_norm"] = result.one_norm_used;
  doc["identity_shift"] = result.identity_shift;
  doc["notes"] = plan.notes;
  if (result.budget) {
    const TrotterBudget& b = *result.budget;
    json budget;
    budget["order"] = b.order;
    budget["c_p"] = b.c_p;
    budget["script_c_p"] = b.script_c_p;
    budget["n_min_per_q"] = b.n_min_per_q;
    budget["n_min_tot"] = b.n_min_tot;
    budget["n_min_tot_approx"] = b.n_min_tot_approx;
    budget["notes"] = b.notes;
    doc["trotter"] = budget;
  }
  return doc.dump(2) + "\n";
}

std::string distribution_to_csv(const PhaseDistribution& pd) {
  std::string out = "l,l_over_2N,P\n";
  const double inv_bins = std::ldexp(1.0, -pd.n_phase);
  for (std::size_t l = 0; l < pd.probs.size(); ++l) {
    out += std::to_string(l);
    out += ',';
    out += format_double(static_cast<double>(l) * inv_bins);
    out += ',';
    out += format_double(pd.probs[l]);
    out += '\n';
  }
  return out;
}

std::string diagnostics_to_json(const DistributionArtifacts& art, const ProblemSetup& setup) {
  json doc;
  doc["n_phase"] = art.n_phase;
  doc["t"] = art.t;
  doc["identity_shift"] = setup.identity_shift;
  doc["l_star"] = art.dist.l_star;
  doc["delta_gap"] = art.dist.delta_gap;

  json per_state = json::array();
  for (const auto& peak : art.dist.per_state) {
    per_state.push_back({{"j", peak.j},
                         {"l_j", peak.l_j},
                         {"kappa", peak.kappa},
                         {"peak", peak.peak},
                         {"theta", art.table.thetas[peak.j]},
                         {"weight", art.table.weights[peak.j]}});
  }
  doc["per_state"] = per_state;

  json lambdas;
  lambdas["l0"] = art.lambdas.l0;
  lambdas["ground_peak"] = art.lambdas.ground_peak;
  lambdas["classification_valid"] = art.lambdas.classification_valid;
  json ratios = json::array();
  for (const auto& ratio : art.lambdas.ratios)
    ratios.push_back({{"j", ratio.j}, {"lambda", ratio.lambda}, {"far", ratio.far_from_l0}});
  lambdas["ratios"] = ratios;
  doc["lambda"] = lambdas;

  const InitialStateReport& cond = art.conditions;
  json conditions;
  conditions["l0"] = cond.l0;
  conditions["c0_sq"] = cond.c0_sq;
  conditions["threshold"] = cond.threshold;
  conditions["exceeds_threshold"] = cond.exceeds_threshold;
  conditions["average_energy_ok"] = cond.average_energy_ok;
  conditions["average_projection_ok"] = cond.average_projection_ok;
  conditions["strong_projection"] = cond.strong_projection;
  conditions["weak_projection"] = cond.weak_projection;
  conditions["phase_degenerate_groups"] = cond.phase_degenerate_groups;
  doc["conditions"] = conditions;

  json post;
  post["l"] = art.post_at_l_star.l;
  post["ground_weight"] = art.post_at_l_star.ground_weight;
  json overlap_table = json::array();
  for (std::size_t j = 0; j < art.post_at_l_star.coeffs.size(); ++j) {
    overlap_table.push_back({{"j", j},
                             {"initial_sq", std::norm(setup.init.overlaps[j])},
                             {"post_sq", std::norm(art.post_at_l_star.coeffs[j])}});
  }
  post["overlaps"] = overlap_table;
  doc["post_measurement"] = post;

  json windows = json::array();
  for (const auto& row : art.windows) {
    windows.push_back({{"a", row.a},
                       {"N", row.n_phase},
                       {"e", row.e},
                       {"l0", row.l0},
                       {"window_prob", row.window_prob},
                       {"lower_bound", row.lower_bound}});
  }
  doc["windows"] = windows;
  return doc.dump(2) + "\n";
}

std::string sweep_to_csv(const std::vector<SweepPoint>& points) {
  std::string out =
      "strategy,t,N,multiplier,l_star,energy,abs_error,fidelity,chem_accurate,regime_exceeded\n";
  for (const auto& p : points) {
    out += p.strategy;
    out += ',';
    out += format_double(p.t);
    out += ',';
    out += std::to_string(p.n_phase);
    out += ',';
    out += std::to_string(p.multiplier);
    out += ',';
    out += std::to_string(p.l_star);
    out += ',';
    out += format_double(p.energy);
    out += ',';
    out += format_double(p.abs_error);
    out += ',';
    out += format_double(p.fidelity);
    out += ',';
    out += p.chem_accurate ? "1" : "0";
    out += ',';
    out += p.first_order_regime_exceeded ? "1" : "0";
    out += '\n';
  }
  return out;
}

std::string trotter_errors_to_csv(const std::vector<TrotterErrorRow>& rows) {
  std::string out = "p,n,q,spectral_error,bound,max_phase_error\n";
  for (const auto& row : rows) {
    out += std::to_string(row.order);
    out += ',';
    out += std::to_string(row.steps);
    out += ',';
    out += std::to_string(row.power);
    out += ',';
    out += format_double(row.spectral_error);
    out += ',';
    out += std::isnan(row.bound) ? "nan" : format_double(row.bound);
    out += ',';
    out += format_double(row.max_phase_error);
    out += '\n';
  }
  return out;
}

std::string histogram_to_csv(const ShotRecord& rec) {
  std::string out = "l,count,frequency\n";
  for (std::size_t l = 0; l < rec.counts.size(); ++l) {
    out += std::to_string(l);
    out += ',';
    out += std::to_string(rec.counts[l]);
    out += ',';
    out += format_double(static_cast<double>(rec.counts[l]) / static_cast<double>(rec.shots));
    out += '\n';
  }
  return out;
}

std::string shots_to_json(const ShotsArtifacts& art, double epsilon_shots, std::uint64_t seed) {
  json doc;
  doc["generator"] = kGeneratorName;
  doc["seed"] = seed;
  doc["epsilon"] = epsilon_shots;
  json rows = json::array();
  for (const auto& row : art.rows) {
    json r;
    r["a"] = row.a;
    r["N"] = row.n_phase;
    r["identifiable"] = row.identifiable;
    r["l_star"] = row.l_star;
    if (row.identifiable) {
      r["delta_gap"] = row.delta_gap;
      r["m_eps"] = row.m_eps;
      r["trials"] = row.trials;
      r["failures"] = row.failures;
      r["failure_rate"] = row.failure_rate;
    } else {
      r["delta_gap"] = row.delta_gap;
      r["note"] = "not identifiable: delta_gap <= 0";
    }
    rows.push_back(r);
  }
  doc["rows"] = rows;
  if (art.select_a) {
    json select;
    select["chosen_a"] = art.chosen_a;
    json ranking = json::array();
    for (const auto& row : art.ranking) {
      ranking.push_back({{"a", row.a},
                         {"N", row.n_phase},
                         {"e", row.e},
                         {"probe_shots", row.probe_shots},
                         {"empirical_top", row.empirical_top},
                         {"window_prob", row.window_prob},
                         {"spread", row.spread}});
    }
    select["ranking"] = ranking;
    doc["select_a"] = select;
  }
  return doc.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << content;
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace qpe
