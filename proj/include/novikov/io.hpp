#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "novikov/cohomology.hpp"
#include "novikov/complex.hpp"
#include "novikov/local_system.hpp"

namespace novikov {

/// Human-readable notes produced while loading (face closure, default weights).
using LoadLog = std::vector<std::string>;

/**
 * ComplexFile:
 *   { "name": "torus", "vertex_count": 9, "simplices": [[0,1,4], ...], "maximal": true }
 * With "maximal" (the default) the listed simplices are closed under faces
 * and the number of added faces is logged; with "maximal": false the list
 * must already be a complex. Vertex tuples must be strictly increasing.
 * Throws Error{ParseError} or Error{InvalidComplex}.
 */
ComplexPtr parse_complex_json(const std::string& text, LoadLog* log = nullptr);
/// Writes the maximal simplices.
nlohmann::ordered_json complex_to_json(const Complex& c);

/**
 * SystemFile:
 *   { "edges": [[0, 1, "2/1"], ...] }   (u < v, weight "p/q" or an integer string)
 * Missing edges get weight 1 (logged). Throws Error{ParseError} or
 * Error{InvalidSystem} (with the offending triangle).
 */
LocalSystem parse_system_json(const std::string& text, const ComplexPtr& base, LoadLog* log = nullptr);
nlohmann::ordered_json system_to_json(const LocalSystem& s);

/**
 * Subcomplex selector file:
 *   { "simplices": [[0], [0,1], ...], "close": false }
 * Strict unless "close" is true. Throws Error{ParseError} or Error{NotFaceClosed}.
 */
Subcomplex parse_subcomplex_json(const std::string& text, const ComplexPtr& parent, LoadLog* log = nullptr);

/// Reads a whole file; throws Error{ParseError} when unreadable.
std::string read_text_file(const std::string& path);

/// {"schema": 1, "command", "instance", "betti", "seed", "wall_time_ms", ...}
nlohmann::ordered_json cohomology_report_json(const std::string& command, const std::string& instance, const CohomologyReport& r,
                                              bool with_representatives, double wall_time_ms);

nlohmann::ordered_json cochain_json(const SparseVector& v);

} // namespace novikov
