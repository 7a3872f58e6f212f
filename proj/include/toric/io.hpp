#pragma once

#include "toric/cohomology.hpp"
#include "toric/correction.hpp"
#include "toric/errors.hpp"
#include "toric/geometry.hpp"
#include "toric/polytope.hpp"
#include "toric/potential.hpp"
#include "toric/spectrum.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace toric {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

// {"dim": n, "facets": [{"normal": [...], "offset": "p/q" | number}], "name": ...}
// Numeric offsets are converted exactly from their decimal text. Unknown
// fields are rejected with SchemaViolation; malformed JSON raises ParseError
// naming `source` and the line.
DelzantPolytope parse_polytope(std::string_view text, const std::string& source = "<input>");
DelzantPolytope load_polytope(const std::string& path);

// {"kind": "zero"} | {"kind": "polynomial", "terms": [...]} |
// {"kind": "ridge", "direction": [...], "profile": ..., "scale": x}
CorrectionTerm parse_correction(std::string_view text, std::size_t dim, const std::string& source = "<input>");
// A built-in name ("zero", "calabi-blowup") or a file path.
CorrectionTerm load_correction(const std::string& path_or_name, std::size_t dim);

// A JSON array of points, or one point per line with whitespace or comma
// separated coordinates ('#' starts a comment).
std::vector<Eigen::VectorXd> parse_points(std::string_view text, std::size_t dim, const std::string& source = "<input>");
std::vector<Eigen::VectorXd> load_points(const std::string& path, std::size_t dim);

std::string read_file(const std::string& path);

Json polytope_json(const DelzantPolytope& p);
Json correction_json(const CorrectionTerm& h);
Json vector_json(const Eigen::VectorXd& v);
Json matrix_json(const Eigen::MatrixXd& m);
Json rational_matrix_json(const RationalMatrix& m);
Json error_json(const ToricError& e);

Json combinatorics_json(const DelzantPolytope& p);
Json validity_json(const ValidityReport& r);
Json extremality_json(const ExtremalityReport& r);
Json spectrum_json(const SpectrumResult& r);
Json cohomology_json(const DelzantPolytope& p);

// Report envelope: {"schema_version", "command", ...body}.
Json report(const std::string& command, Json body);

// Flattens scalar leaves into "path,value" lines.
std::string flatten_csv(const Json& j);

}  // namespace toric
