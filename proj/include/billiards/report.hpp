#pragma once

#include "billiards/configspace.hpp"
#include "billiards/leray.hpp"
#include "billiards/oracle.hpp"
#include "billiards/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace billiards::report {

using json = nlohmann::json;

json to_json(const geometry::SurfaceSpec& surface);
geometry::SurfaceSpec surface_from_json(const json& j);

/// {"A": [...], "B": [...], "points": [[...], ...]}
json to_json(const configspace::Configuration& c);
configspace::Configuration configuration_from_json(const geometry::SurfaceSpec& surface, const json& j);

/// Report of the `solve` command.
json solve_report(const geometry::SurfaceSpec& surface, const geometry::SurfacePoint& A,
                  const geometry::SurfacePoint& B, int n, const solver::SolveResult& result,
                  const solver::CountVerdict& verdict);

/// Report of the `oracle` command.
json oracle_report(const geometry::Vector& A, const geometry::Vector& B, int n,
                   const std::vector<oracle::SphereTrajectory>& trajectories);

/// Report of the `cohomology` and `verify` commands.  Field elements are
/// written as strings.
json to_json(const leray::CohomologyReport& r);

std::string solve_text(const json& report);
std::string cohomology_text(const leray::CohomologyReport& r);

/// Writes `content` to a temporary file next to `path`, then renames it.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace billiards::report
