#pragma once

#include "guardres/core.hpp"

#include <string>
#include <string_view>

namespace guardres {

/// Parses a ground normal program.
///
///     program := clause*
///     clause  := atom [ ":-" literal { "," literal } ] "."
///     literal := atom | "not" atom
///
/// `%` starts a comment running to the end of the line. Atoms are interned
/// in order of first occurrence. Errors are reported as ParseError carrying
/// the 1-based position of the offending token.
Program parse_program(std::string_view text);

/// Canonical text: one clause per line, positive body before negative body,
/// each part in atom-id order.
std::string render_program(const Program& program);

/// Parses "{a, b}" (whitespace free-form, "{}" for the empty set) against an
/// existing table. Unknown names are an error.
Interpretation parse_interpretation(std::string_view text, const AtomTable& table);

} // namespace guardres
