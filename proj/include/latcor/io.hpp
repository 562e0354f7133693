#pragma once

// JSON file formats and report serialization.
//
//   lattice file: {"gram": [[int, ...], ...]}
//   d-table file: {"orders": [int], "pairing": [["p/q", ...], ...],
//                  "d": [{"elem": [int], "value": "p/q"}, ...],
//                  "z2_homology_sphere": bool}
//
// Rationals are always "p/q" strings in lowest terms (or plain "p").

#include <filesystem>

#include <json.hpp>

#include "latcor/topo.hpp"

namespace latcor::io {

using nlohmann::json;

json read_json_file(const std::filesystem::path& path);

/// Square symmetric integer matrix. Throws ParseError / NotSymmetric.
IntMatrix gram_from_json(const json& doc);
IntMatrix load_gram(const std::filesystem::path& path);
json gram_to_json(const IntMatrix& gram);

DInvariantTable dtable_from_json(const json& doc);
DInvariantTable load_dtable(const std::filesystem::path& path);
json dtable_to_json(const DInvariantTable& table);

json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);
json element_to_json(const GroupElement& x);
GroupElement element_from_json(const json& j);
json subgroup_to_json(const Subgroup& h);
Subgroup subgroup_from_json(const json& j);
json rat_matrix_to_json(const RatMatrix& m);
RatMatrix rat_matrix_from_json(const json& j);
json dual_vector_to_json(const DualVector& v);

json report_to_json(const ObstructionReport& report);
ObstructionReport report_from_json(const json& j);

}  // namespace latcor::io
