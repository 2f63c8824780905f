#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "ontokms/rdf/term.hpp"

namespace ontokms::rdf {

enum class Syntax { Turtle, NTriples };

/// "turtle"/"ttl" or "ntriples"/"nt" (case-insensitive).
std::optional<Syntax> syntax_from_name(std::string_view name);
/// By file extension: `.ttl` or `.nt`.
std::optional<Syntax> syntax_from_path(const std::filesystem::path& path);
std::string_view media_type(Syntax syntax);

/// Parses Turtle without blank nodes or collections: `@prefix`/`@base` (and
/// the SPARQL-style PREFIX/BASE forms), prefixed names, `a`, `;` and `,`
/// lists, IRIs in `<>`, quoted literals with `@lang` or `^^datatype`, numeric
/// and boolean shorthand, `#` comments.
///
/// Relative IRIs resolve against `base` (or the last `@base`); with no base
/// they are kept as written. A datatyped literal is stored as a plain literal
/// whose value is `lexical^^<datatype>`.
///
/// Throws ParseError carrying the line and column of the first offending
/// character; nothing is returned on failure.
std::vector<Triple> parse_turtle(std::string_view text,
                                 std::string_view base = {});

/// Strict N-Triples: no directives, prefixed names or abbreviations.
std::vector<Triple> parse_ntriples(std::string_view text);

std::vector<Triple> parse_rdf(std::string_view text, Syntax syntax,
                              std::string_view base = {});

/// RFC 3986 reference resolution. Returns `reference` unchanged when it is
/// absolute or when `base` is empty.
std::string resolve_iri(std::string_view base, std::string_view reference);

}  // namespace ontokms::rdf
