#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ontokms::onto {

inline constexpr std::string_view kDefaultBaseIri = "http://epilepsiae.example.org/onto#";

/// Local names of the four branch roots.
inline constexpr std::array<std::string_view, 4> kRootNames{
    "GeneralConcept", "SeizureType", "EpilepticSyndrome", "Electroencephalography"};

/// Annotation languages; a validated concept has exactly one label and one
/// comment in each.
inline constexpr std::array<std::string_view, 2> kLanguages{"en", "pt"};

using LangMap = std::map<std::string, std::string>;

/// Concept-level view of an `owl:Class`.
struct Concept {
  std::string id;
  std::set<std::string> parents;
  LangMap labels;
  LangMap comments;

  friend bool operator==(const Concept&, const Concept&) = default;
};

nlohmann::json to_json(const Concept& c);
/// Throws Error(Validation) on missing or mistyped fields.
Concept concept_from_json(const nlohmann::json& json);

}  // namespace ontokms::onto
