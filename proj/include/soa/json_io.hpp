#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "soa/verify.hpp"

/**
 * @file json_io.hpp
 * @brief The JSON formats for presentations, arrows, certificates and reports.
 *
 * Finite sets are integers, maps are `{"dom", "cod", "table"}` and arrows are
 * `{"top", "bot", "map"}`. Presentations name every object, arrow and square;
 * identities are named `1_<name>` and may be omitted.
 */

namespace soa {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(std::string_view text);
Json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const Json& value);

/// Canonical serialisation: two-space indentation and a trailing newline.
std::string dump(const Json& value);

Json to_json(const FiniteMap& f);
Json to_json(const ArrowObject& f);
FiniteMap map_from_json(const Json& j);
/// Accepts the arrow form or a bare map.
ArrowObject arrow_from_json(const Json& j);

/**
 * Parses and validates a presentation.
 *
 * Throws ParseError for malformed JSON or unknown names and
 * InvalidPresentation, listing every violated axiom, if validation fails.
 */
Presentation parse_presentation(std::string_view text);
Presentation presentation_from_json(const Json& j);
Presentation load_presentation(const std::filesystem::path& path);

/// Canonical form: explicit composites only where they are not forced by a unit law.
Json to_json(const Presentation& pres);

Json to_json(const TraceSummary& trace);
Json to_json(const Certificate& cert, const Presentation& pres);
/// Generator names are resolved against `pres`.
Certificate certificate_from_json(const Json& j, const Presentation& pres);

Json to_json(const Report& report);

/// A problem `{"gen": name, "sigma0": map, "sigma1": map}` against `R`.
CommSquare problem_from_json(const Json& j, const Presentation& pres, const ArrowObject& R, std::size_t& gen);

} // namespace soa
