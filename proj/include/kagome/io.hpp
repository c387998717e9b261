#pragma once

// JSON and DOT formats shared by the CLI and the Python module. Every
// top-level document carries "schema_version".

#include <json.hpp>

#include <string>

#include "kagome/exact.hpp"
#include "kagome/tiling.hpp"

namespace kagome {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"family", "n", "hexes": [[a,b],...], "tris": [[a,b,"U"|"D"],...], "base": [[a,b],[a,b]]}
Json region_to_json(const Region& r);
/// Rebuilds the region from its cells; throws FormatError when the stored
/// base vertex does not match the rebuilt one.
RegionPtr region_from_json(const Json& j);

// {"region": <region>, "assign": [[[a,b,"U"|"D"],[a,b]], ...]}, triangles in
// lexicographic order.
Json tiling_to_json(const Tiling& t);
/// Throws FormatError or InvalidTiling.
Tiling tiling_from_json(const Json& j);
// Reuses an already built region when its cells match.
Tiling tiling_from_json(const Json& j, const RegionPtr& region);

Json vertex_to_json(const KagomeVertex& v);

/// Accepts a family spec such as "lozenge:3" or a path to a region or tiling
/// JSON file.
RegionPtr load_region_arg(const std::string& arg);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json graph_stats_json(const TilingGraph& g);
std::string graph_to_dot(const TilingGraph& g);

std::string rational_string(const mpq_class& q);
// "1/3", "0.25" or "2" as an exact fraction; throws FormatError.
mpq_class parse_rational(const std::string& text);

Json ledger_json(const TilingGraph& g, const Ledger& ledger, const ChainVariant& variant);

}  // namespace kagome
