#pragma once

#include <string_view>

#include "ontokms/onto/concept.hpp"
#include "ontokms/rdf/triple_store.hpp"

namespace ontokms::onto {

inline constexpr std::size_t kSeedConceptCount = 145;

/// The bundled ontology: the four branch roots plus synthetic descendants
/// (local names prefixed `SYN-`) for 145 classes in total, each with one en
/// and one pt label and comment. Deterministic; passes validate() cleanly.
///
/// Below the roots the content is placeholder data, not clinical terminology.
rdf::TripleStore generate_seed(std::string_view base_iri = kDefaultBaseIri);

}  // namespace ontokms::onto
