#pragma once

#include <ostream>

#include "postlie/linalg.hpp"

namespace postlie {

template <Scalar S>
void PrintTo(const Vector<S>& v, std::ostream* os) {
  *os << to_string(v);
}

template <Scalar S>
void PrintTo(const LinearEndo<S>& m, std::ostream* os) {
  *os << "[";
  for (std::size_t j = 0; j < m.dim(); ++j) *os << (j ? ", " : "") << to_string(m.image_of_basis(j));
  *os << "]";
}

}  // namespace postlie

inline void PrintTo(const mpq_class& q, std::ostream* os) { *os << q.get_str(); }
