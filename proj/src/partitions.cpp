#include "postlie/partitions.hpp"

#include <algorithm>

namespace postlie {

std::vector<SetPartition> set_partitions(std::size_t n) {
  std::vector<SetPartition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  // a[i] is the block of element i; a[0] = 0 and a[i] <= 1 + max(a[0..i-1]).
  std::vector<std::size_t> a(n, 0), m(n, 0);
  while (true) {
    std::size_t blocks = *std::max_element(a.begin(), a.end()) + 1;
    SetPartition p(blocks);
    for (std::size_t i = 0; i < n; ++i) p[a[i]].push_back(i);
    out.push_back(std::move(p));

    std::size_t i = n - 1;
    while (i > 0 && a[i] > m[i - 1]) --i;
    if (i == 0) break;
    ++a[i];
    for (std::size_t j = i; j < n; ++j) {
      if (j > i) a[j] = 0;
      m[j] = std::max(m[j - 1], a[j]);
    }
  }
  return out;
}

std::uint64_t bell_number(std::size_t n) {
  std::vector<std::uint64_t> row = {1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next = {row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace postlie
