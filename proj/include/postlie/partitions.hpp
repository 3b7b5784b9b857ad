#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace postlie {

// A set partition of {0, ..., n-1}; each block is sorted ascending and the
// blocks are listed by their smallest element.
using SetPartition = std::vector<std::vector<std::size_t>>;

// All set partitions of an n-element set, generated from restricted growth
// strings in lexicographic order.
std::vector<SetPartition> set_partitions(std::size_t n);

// Bell numbers via the Bell triangle.
std::uint64_t bell_number(std::size_t n);

}  // namespace postlie
