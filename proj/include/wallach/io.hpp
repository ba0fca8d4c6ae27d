#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wallach/core.hpp"
#include "wallach/curvature.hpp"
#include "wallach/curves.hpp"
#include "wallach/equilibria.hpp"
#include "wallach/flow.hpp"
#include "wallach/verify.hpp"

namespace wallach::io {

using nlohmann::json;

/// Shortest round-trip is not required; 17 significant digits always are.
std::string format_double(double v);

/// Decimal or rational literal ("0.3", "1/6", "-2e-3"). Throws DomainError.
double parse_real(std::string_view text);
/// Comma-separated triple "x,y,z".
std::array<double, 3> parse_triple(std::string_view text);

std::string curve_csv(const std::vector<CurveSample>& samples);
std::string trajectory_csv(const Trajectory& traj);

/// Rows of a numeric CSV with a header line; the header is returned separately.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};
CsvTable read_csv(std::string_view text);

json to_json(const SpaceParams& p);
json to_json(const Metric& m);
json to_json(const CurvatureSigns& s);
json to_json(const Trajectory& traj);
json to_json(const EquilibriaReport& r);
json to_json(const VerifyReport& r);
json curve_json(const CurveId& id, const std::vector<CurveSample>& samples);

/// {"schema_version": "1", "space": ..., "payload_kind": kind, "payload": payload}
json output_record(const SpaceParams& p, std::string_view kind, json payload);

/// Writes to a sibling temporary file and renames it over path.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace wallach::io
