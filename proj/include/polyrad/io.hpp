#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "polyrad/audit.hpp"
#include "polyrad/fixtures.hpp"
#include "polyrad/polytope.hpp"

// Polytope files:
//   {"dim": 2, "rep": "V", "points": [[0, 0], [1, 0], [0, 1]]}
//   {"dim": 1, "rep": "H", "normals": [[1], [-1]], "offsets": [1, 1]}
// With "exact": true every number is a string "p/q" (or an integer/decimal
// string) and the body carries its rational payload.
namespace polyrad::io {

/// Throws Error{ParseError} on malformed text and Error{DimensionMismatch}
/// when a row length disagrees with dim.
Body parse_polytope(std::string_view text);

/// Throws Error{FileNotFound} when the file cannot be opened.
Body read_polytope(const std::filesystem::path& path);

/// Exact bodies are written with rational strings.
std::string format_polytope(const VPolytope& v);
std::string format_polytope(const HPolytope& h);
std::string format_polytope(const Body& body);

void write_text(const std::filesystem::path& path, const std::string& text);

/// Sidecar of closed-form radii; unset fields are omitted.
std::string format_radii(const fixtures::FixtureRadii& radii);
fixtures::FixtureRadii parse_radii(std::string_view text);

/// Numbers with 12 significant digits, the way every report is printed.
std::string format_number(double value);

/// One-line record with keys name, lhs, rhs, slack, satisfied, tight, digest.
std::string format_record(const audit::InequalityReport& report);
audit::InequalityReport parse_record(std::string_view line);

}  // namespace polyrad::io
