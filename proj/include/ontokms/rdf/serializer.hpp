#pragma once

#include <filesystem>
#include <string>

#include "ontokms/rdf/triple_store.hpp"
#include "ontokms/rdf/turtle.hpp"

namespace ontokms::rdf {

/// N-Triples: one `\n`-terminated line per triple in (s, p, o) canonical
/// order, byte-stable across runs. Turtle: fixed prefix header, one block per
/// subject, predicates and objects in the same canonical order. An empty store
/// serializes to an empty string in both syntaxes.
std::string serialize(const TripleStore& store, Syntax syntax);

/// Writes the sorted N-Triples serialization (UTF-8, LF) via a temporary file
/// and rename. Throws Error(Io) on failure.
void save_snapshot(const TripleStore& store, const std::filesystem::path& path);

/// Throws Error(Io) when the file cannot be read and ParseError when it is not
/// valid N-Triples; no partial store is returned.
TripleStore load_snapshot(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
/// Atomic replace through `<path>.tmp`.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace ontokms::rdf
