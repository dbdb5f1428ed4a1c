#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "extremal/system.hpp"

namespace extremal {

using Json = nlohmann::json;

struct Query {
    std::string kind;
    std::vector<std::string> sets{"A", "B"};
    std::vector<std::string> points{"a", "b"};
    Json args = Json::object();
};

struct Scene {
    std::string name;
    std::string description;
    std::string stand_in;  // non-empty for polyhedral stand-ins of smooth sets
    std::size_t dim = 0;
    PolyhedralNorm norm = PolyhedralNorm::max_norm();
    std::optional<PolyhedralNorm> dual_norm;
    std::map<std::string, Region> regions;
    std::map<std::string, Vector> points;
    std::vector<Query> queries;
    std::optional<std::array<Scalar, 4>> window;  // xmin, ymin, xmax, ymax

    bool exact() const;
};

/// Throws ParseError with line, column and the offending token.
Scene parse_scene(std::string_view text);
Scene load_scene(const std::filesystem::path& path);

const std::vector<std::string>& query_kinds();
/// Throws PreconditionError naming the bad key.
void validate_query(const Query& q, std::size_t dim);

struct RunConfig {
    std::optional<std::vector<Scalar>> schedule;
    std::size_t face_cap = 10000;
    std::size_t grid = 32;
    std::uint64_t seed = 0;
    bool timings = false;
};

std::vector<Scalar> parse_schedule(std::string_view text);

SetSystem system_for(const Scene& scene, const Query& q);

/// One result object. Module errors other than SoundnessError are recorded
/// under "error"; SoundnessError propagates.
Json run_query(const Scene& scene, const Query& q, const RunConfig& cfg);

/// Report v1 over the queries whose kind passes `keep` (all when empty).
Json run_scene(const Scene& scene, const RunConfig& cfg, const std::vector<std::string>& keep = {});
Json run_queries(const Scene& scene, const std::vector<Query>& queries, const RunConfig& cfg);

enum class ReportFormat { Text, Json };
std::string emit_report(const Json& report, ReportFormat format);
Json parse_report(std::string_view text);
bool report_has_errors(const Json& report);

/// dim 2 only. Without a window the scene window or a box around the
/// points is used.
std::string emit_svg(const Scene& scene, const Json& report,
                     const std::optional<std::array<Scalar, 4>>& window = std::nullopt);

/// Field-by-field comparison of a report against a golden expectation
/// file; returns the mismatches.
std::vector<std::string> compare_golden(const Json& report, const Json& golden);

/// Serialization helpers shared with the tests.
Json to_json(const Vector& v);
Json to_json(const Verdict& v);
Json to_json(const ShiftWitness& w);
Json to_json(const DualPair& d);
Vector vector_from_json(const Json& j);
Scalar scalar_from_json(const Json& j);
ShiftWitness witness_from_json(const Json& j);
DualPair dual_pair_from_json(const Json& j);

}  // namespace extremal
