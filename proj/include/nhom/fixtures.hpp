#ifndef NHOM_FIXTURES_HPP
#define NHOM_FIXTURES_HPP

#include <string>
#include <utility>
#include <vector>

#include "nhom/algebra.hpp"

// Small algebras shipped with the library; the same data lives in fixtures/*.json.
namespace nhom::fixtures {

namespace detail {

inline Vec unit(std::size_t d, std::size_t i, long c = 1) {
  Vec v(d);
  v[i] = c;
  return v;
}

inline Mat diag(std::vector<long> entries) {
  Mat m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

}  // namespace detail

/// n=2, d=2, even, zero bracket, alpha = id.
inline NHomAlgebra abelian2() { return NHomAlgebra(2, {0, 0}, {}, Mat::identity(2)); }

/// n=2, d=2, even, [e1,e2] = e2, alpha = id.
inline NHomAlgebra aff1() {
  return NHomAlgebra(2, {0, 0}, {{{0, 1}, detail::unit(2, 1)}}, Mat::identity(2));
}

/// aff1 twisted by alpha = diag(1,2).
inline NHomAlgebra homaff1() {
  return NHomAlgebra(2, {0, 0}, {{{0, 1}, detail::unit(2, 1)}}, detail::diag({1, 2}));
}

/// n=2, d=2, parity (0,1), [e1,e2] = e2, [e2,e2] = 0, alpha = id.
inline NHomAlgebra super2() {
  return NHomAlgebra(2, {0, 1}, {{{0, 1}, detail::unit(2, 1)}}, Mat::identity(2));
}

/// n=3, d=4, even, [e_i,e_j,e_k] = eps_{ijkl} e_l, alpha = id.
inline NHomAlgebra three_lie4() {
  BracketTable t;
  // eps(0,1,2,3) = +1; removing index l from (0,1,2,3) and appending it costs (-1)^{3-l}
  t[{1, 2, 3}] = detail::unit(4, 0, -1);
  t[{0, 2, 3}] = detail::unit(4, 1, 1);
  t[{0, 1, 3}] = detail::unit(4, 2, -1);
  t[{0, 1, 2}] = detail::unit(4, 3, 1);
  return NHomAlgebra(3, {0, 0, 0, 0}, std::move(t), Mat::identity(4));
}

/// abelian2 with alpha = 0: a valid algebra whose twist is not surjective.
inline NHomAlgebra abelian2_null_twist() { return NHomAlgebra(2, {0, 0}, {}, Mat(2, 2)); }

inline std::vector<std::pair<std::string, NHomAlgebra>> bundled() {
  return {{"abelian2", abelian2()},
          {"aff1", aff1()},
          {"homaff1", homaff1()},
          {"super2", super2()},
          {"threeLie4", three_lie4()}};
}

}  // namespace nhom::fixtures

#endif  // NHOM_FIXTURES_HPP
