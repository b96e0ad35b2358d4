#ifndef NHOM_ENDO_HPP
#define NHOM_ENDO_HPP

#include <stdexcept>

#include "nhom/algebra.hpp"

namespace nhom {

/// Homogeneous linear map of degree xi: sends N_g into N_{g+xi}.
/// mat(j, i) is the e_j coefficient of D(e_i).
struct GradedEndo {
  Mat mat;
  int xi = 0;

  friend bool operator==(const GradedEndo& a, const GradedEndo& b) { return a.xi == b.xi && a.mat == b.mat; }
};

inline bool is_homogeneous(const NHomAlgebra& alg, const Mat& m, int xi) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (((alg.parity(r) + alg.parity(c) + xi) & 1) != 0 && sgn(m(r, c)) != 0) return false;
  return true;
}

inline bool commutes_with_alpha(const NHomAlgebra& alg, const Mat& m) {
  return m * alg.alpha() == alg.alpha() * m;
}

/// Column-major flattening: entry (row, col) goes to col * d + row.
inline Vec vectorize(const Mat& m) {
  Vec v(m.rows() * m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) v[c * m.rows() + r] = m(r, c);
  return v;
}

inline Mat devectorize(const Vec& v, std::size_t d, std::size_t offset = 0) {
  Mat m(d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) m(r, c) = v[offset + c * d + r];
  return m;
}

inline GradedEndo compose(const GradedEndo& a, const GradedEndo& b) { return {a.mat * b.mat, (a.xi + b.xi) & 1}; }

/// [D, E] = DE - (-1)^{xi eta} ED.
inline GradedEndo supercommutator(const GradedEndo& a, const GradedEndo& b) {
  Mat ab = a.mat * b.mat;
  const Mat ba = b.mat * a.mat;
  if (sign_pow(static_cast<unsigned>(a.xi * b.xi)) == 1)
    ab -= ba;
  else
    ab += ba;
  return {std::move(ab), (a.xi + b.xi) & 1};
}

/// D . E = (DE + (-1)^{xi eta} ED) / 2.
inline GradedEndo jordan_product(const GradedEndo& a, const GradedEndo& b) {
  Mat ab = a.mat * b.mat;
  const Mat ba = b.mat * a.mat;
  if (sign_pow(static_cast<unsigned>(a.xi * b.xi)) == 1)
    ab += ba;
  else
    ab -= ba;
  ab *= Scalar(1, 2);
  return {std::move(ab), (a.xi + b.xi) & 1};
}

/// D -> D alpha on the commutant of alpha.
inline GradedEndo alpha_twist(const NHomAlgebra& alg, const GradedEndo& D) {
  if (!commutes_with_alpha(alg, D.mat)) throw std::invalid_argument("alpha_twist: map does not commute with alpha");
  return {D.mat * alg.alpha(), D.xi};
}

/// (D . E) . twist(F) - twist(D) . (E . F)
inline GradedEndo hom_associator(const NHomAlgebra& alg, const GradedEndo& D, const GradedEndo& E,
                                 const GradedEndo& F) {
  GradedEndo lhs = jordan_product(jordan_product(D, E), alpha_twist(alg, F));
  const GradedEndo rhs = jordan_product(alpha_twist(alg, D), jordan_product(E, F));
  lhs.mat -= rhs.mat;
  return lhs;
}

}  // namespace nhom

#endif  // NHOM_ENDO_HPP
