#pragma once

// JSON run configuration and CSV output.
//
// Config keys (all optional unless noted):
//   flux_k        int list, or "burgers": n for k_j = j
//   cells         int list (required)
//   spacing, origin  or  lower, upper
//   cfl, t_end, threads
//   boundary      "outflow" | "periodic"
//   record_times  number list, or {"geometric": {t_min, t_max, count, with_zero}}
//   initial       {kind, center, radius, height, mass, eps, left, right, lambda, mu}
//   scaled_family {lambda, mu} applied on top of initial

#include <filesystem>
#include <string>
#include <utility>

#include "json.hpp"

#include "disperse/field.hpp"
#include "disperse/observables.hpp"
#include "disperse/solver.hpp"

namespace disperse {

using Json = nlohmann::json;

/// Parses a file; throws std::runtime_error with the path on failure.
Json load_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& value);

FluxSpec parse_flux(const Json& cfg);
Grid parse_grid(const Json& cfg);
std::vector<double> parse_record_times(const Json& value);
SolverConfig parse_solver_config(const Json& cfg);
InitialKind parse_initial_kind(const std::string& name);
InitialSpec parse_initial(const Json& cfg);

/// Grid and initial data of a config, validated.
Field build_initial_field(const Json& cfg);

/// "# grid: n,cells...,spacing...,origin...,t=<time>" followed by one value
/// per line in row-major order, 17 significant digits.
void write_snapshot_csv(const std::filesystem::path& path, const Field& field, double t);
std::pair<Field, double> read_snapshot_csv(const std::filesystem::path& path);

/// One row per record: t, norm_<p>..., tv, entropy_mass_<r>..., mass, width_axis_<j>...
void write_report_csv(const std::filesystem::path& path, const RunReport& report);

/// Generic two-column-or-more table with a header row.
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

/// Number formatting used by the CSV writers; "inf" for infinity.
std::string format_number(double x);

}  // namespace disperse
