#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ontokms::search {

/// Splits on non-alphanumeric code points after lowercasing, compatibility
/// decomposition (NFKD) and removal of nonspacing marks, so "Epilépticas"
/// becomes "epilepticas". Tokens shorter than two code points are dropped. No
/// stemming.
std::vector<std::string> tokenize(std::string_view text);

/// UTF-8 to code points; malformed sequences decode to U+FFFD.
std::u32string to_code_points(std::string_view utf8);

/// At most `max_code_points` code points of `text`, with "…" appended when
/// anything was cut.
std::string truncate_utf8(std::string_view text, std::size_t max_code_points);

}  // namespace ontokms::search
