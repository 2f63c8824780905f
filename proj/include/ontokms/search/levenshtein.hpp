#pragma once

#include <cstddef>
#include <string_view>

namespace ontokms::search {

/// Unit-cost insert/delete/substitute distance over code points.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
/// Same, decoding both UTF-8 inputs first.
std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace ontokms::search
