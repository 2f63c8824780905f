#include "ontokms/search/levenshtein.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "ontokms/search/tokenizer.hpp"

namespace ontokms::search {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t substitute = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitute});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(std::u32string_view(to_code_points(a)),
                     std::u32string_view(to_code_points(b)));
}

}  // namespace ontokms::search
