#pragma once

#include <string>

#include "qpe/workflow.hpp"

namespace qpe {

/// Shortest round-trip decimal form; locale-free, so files are byte-stable.
std::string format_double(double v);

std::string plan_to_json(const PlanResult& result);

std::string distribution_to_csv(const PhaseDistribution& pd);
std::string diagnostics_to_json(const DistributionArtifacts& art, const ProblemSetup& setup);

std::string sweep_to_csv(const std::vector<SweepPoint>& points);
std::string trotter_errors_to_csv(const std::vector<TrotterErrorRow>& rows);

std::string histogram_to_csv(const ShotRecord& rec);
std::string shots_to_json(const ShotsArtifacts& art, double epsilon_shots, std::uint64_t seed);

void write_file(const std::string& path, const std::string& content);

}  // namespace qpe
