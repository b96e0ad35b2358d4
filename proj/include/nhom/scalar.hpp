#ifndef NHOM_SCALAR_HPP
#define NHOM_SCALAR_HPP

#include <gmpxx.h>

#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nhom {

/// Exact rational over the ground field. GMP keeps mpq values in lowest terms
/// with a positive denominator after every arithmetic operation.
using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

/// (-1)^e for an integer exponent.
inline int sign_pow(unsigned e) { return (e & 1u) ? -1 : 1; }

/// Parses "p", "-p", "p/q" or "-p/q". Rejects zero denominators, whitespace
/// and decimal notation.
inline Scalar parse_scalar(std::string_view text) {
  static const std::regex pattern(R"(^-?[0-9]+(/[0-9]+)?$)");
  const std::string s(text);
  if (!std::regex_match(s, pattern)) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  const auto slash = s.find('/');
  if (slash != std::string::npos && mpz_class(s.substr(slash + 1)) == 0) {
    throw std::invalid_argument("zero denominator in '" + s + "'");
  }
  Scalar q(s, 10);
  q.canonicalize();
  return q;
}

/// Lowest-terms string: "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Scalar& q) { return q.get_str(10); }

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }

inline bool is_zero(const Vec& v) {
  for (const auto& x : v) {
    if (!is_zero(x)) return false;
  }
  return true;
}

}  // namespace nhom

#endif  // NHOM_SCALAR_HPP
