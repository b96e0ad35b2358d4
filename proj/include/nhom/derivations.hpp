#ifndef NHOM_DERIVATIONS_HPP
#define NHOM_DERIVATIONS_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "nhom/algebra.hpp"
#include "nhom/endo.hpp"
#include "nhom/linalg.hpp"

namespace nhom {

/// The spaces of generalized derivations at a fixed alpha-power k and parity xi.
enum class Kind { Omega, Der, ZDer, C, QC, QDer, GDer };

inline constexpr std::array<Kind, 7> kAllKinds{Kind::Omega, Kind::Der, Kind::ZDer, Kind::C,
                                               Kind::QC,    Kind::QDer, Kind::GDer};

inline std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::Omega: return "Omega";
    case Kind::Der: return "Der";
    case Kind::ZDer: return "ZDer";
    case Kind::C: return "C";
    case Kind::QC: return "QC";
    case Kind::QDer: return "QDer";
    case Kind::GDer: return "GDer";
  }
  return "?";
}

inline Kind parse_kind(std::string_view s) {
  for (auto k : kAllKinds)
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown kind '" + std::string(s) + "'");
}

/// Number of d x d unknown blocks in the joint system: D plus its witnesses.
inline std::size_t block_count(Kind kind, std::size_t arity) {
  switch (kind) {
    case Kind::QDer: return 2;
    case Kind::GDer: return arity + 1;
    default: return 1;
  }
}

struct EndoSubspace {
  Kind kind = Kind::Omega;
  std::size_t k = 0;
  int xi = 0;
  /// Canonical basis of the vectorized D-block projection (ambient d*d).
  SubspaceBasis space;
  std::vector<GradedEndo> basis;
  /// For QDer: {D'}; for GDer: {D^(1), ..., D^(n)}. Index-aligned with basis.
  std::vector<std::vector<Mat>> witnesses;
  /// Witness-only solutions (D = 0), the freedom in choosing witnesses.
  std::vector<std::vector<Mat>> witness_freedom;

  std::size_t dim() const { return basis.size(); }
};

namespace detail {

/// Builds the defining linear system of one kind over all basis n-tuples.
/// Unknown (block b, row r, col c) lives at b*d*d + c*d + r.
class ConstraintAssembler {
 public:
  ConstraintAssembler(const NHomAlgebra& alg, std::size_t k, int xi, std::size_t blocks)
      : alg_(alg), k_(k), xi_(xi), d_(alg.dim()), blocks_(blocks), red_(blocks * alg.dim() * alg.dim()) {
    const Mat& ak = alg.alpha_power(k);
    for (std::size_t i = 0; i < d_; ++i) ak_cols_.push_back(to_sparse(ak.col(i)));
  }

  std::size_t var(std::size_t b, std::size_t r, std::size_t c) const { return b * d_ * d_ + c * d_ + r; }
  std::size_t unknowns() const { return red_.cols(); }

  void add_homogeneity() {
    for (std::size_t b = 0; b < blocks_; ++b)
      for (std::size_t r = 0; r < d_; ++r)
        for (std::size_t c = 0; c < d_; ++c)
          if (((alg_.parity(r) + alg_.parity(c) + xi_) & 1) != 0) {
            Vec e(unknowns());
            e[var(b, r, c)] = 1;
            red_.add(std::move(e));
          }
  }

  /// U alpha - alpha U = 0 for every block.
  void add_commutation() {
    const Mat& a = alg_.alpha();
    for (std::size_t b = 0; b < blocks_; ++b)
      for (std::size_t r = 0; r < d_; ++r)
        for (std::size_t c = 0; c < d_; ++c) {
          Vec e(unknowns());
          for (std::size_t m = 0; m < d_; ++m) {
            if (sgn(a(m, c)) != 0) e[var(b, r, m)] += a(m, c);
            if (sgn(a(r, m)) != 0) e[var(b, m, c)] -= a(r, m);
          }
          if (!is_zero(e)) red_.add(std::move(e));
        }
  }

  /// d equations (one per output coordinate) for one tuple.
  using Equations = std::vector<Vec>;

  Equations fresh() const { return Equations(d_, Vec(unknowns())); }

  /// coeff * [a^k x_1, ..., U_b(x_s), ..., a^k x_n]
  void slot_term(Equations& eq, const Tuple& t, std::size_t s, std::size_t b, const Scalar& coeff) {
    const Mat& S = slot_matrix(t, s);
    for (std::size_t l = 0; l < d_; ++l)
      for (std::size_t j = 0; j < d_; ++j)
        if (sgn(S(l, j)) != 0) eq[l][var(b, j, t[s])] += coeff * S(l, j);
  }

  /// coeff * U_b([x_1, ..., x_n])
  void rhs_term(Equations& eq, const Tuple& t, std::size_t b, const Scalar& coeff) {
    const Vec w = basis_bracket(alg_, t);
    for (std::size_t l = 0; l < d_; ++l)
      for (std::size_t m = 0; m < d_; ++m)
        if (sgn(w[m]) != 0) eq[l][var(b, l, m)] += coeff * w[m];
  }

  void commit(Equations& eq) {
    for (auto& row : eq)
      if (!is_zero(row)) red_.add(std::move(row));
  }

  Scalar slot_sign(const Tuple& t, std::size_t s) const {
    return Scalar(sign_pow(static_cast<unsigned>(xi_) * prefix_parity(alg_, t, s)));
  }

  const RowReducer& reducer() const { return red_; }

 private:
  // S(l, j) = e_l-coefficient of [a^k x_1, ..., e_j (slot s), ..., a^k x_n]
  const Mat& slot_matrix(const Tuple& t, std::size_t s) {
    auto key = std::make_pair(t, s);
    auto it = slot_cache_.find(key);
    if (it != slot_cache_.end()) return it->second;
    Mat S(d_, d_);
    std::vector<SparseVec> args;
    for (std::size_t m = 0; m < t.size(); ++m) args.push_back(m == s ? SparseVec{} : ak_cols_[t[m]]);
    for (std::size_t j = 0; j < d_; ++j) {
      args[s] = unit_sparse(j);
      const Vec v = bracket_sparse(alg_, args);
      for (std::size_t l = 0; l < d_; ++l) S(l, j) = v[l];
    }
    return slot_cache_.emplace(key, std::move(S)).first->second;
  }

  const NHomAlgebra& alg_;
  std::size_t k_;
  int xi_;
  std::size_t d_;
  std::size_t blocks_;
  RowReducer red_;
  std::vector<SparseVec> ak_cols_;
  std::map<std::pair<Tuple, std::size_t>, Mat> slot_cache_;
};

inline void assemble_identities(ConstraintAssembler& as, const NHomAlgebra& alg, Kind kind) {
  const std::size_t n = alg.arity();
  const Scalar one(1), minus_one(-1);
  for_each_tuple(alg.dim(), n, [&](const Tuple& t) {
    switch (kind) {
      case Kind::Omega: break;
      case Kind::Der: {
        auto eq = as.fresh();
        for (std::size_t s = 0; s < n; ++s) as.slot_term(eq, t, s, 0, as.slot_sign(t, s));
        as.rhs_term(eq, t, 0, minus_one);
        as.commit(eq);
        break;
      }
      case Kind::ZDer: {
        auto first = as.fresh();
        as.slot_term(first, t, 0, 0, one);
        as.commit(first);
        auto image = as.fresh();
        as.rhs_term(image, t, 0, one);
        as.commit(image);
        break;
      }
      case Kind::C: {
        for (std::size_t s = 0; s < n; ++s) {
          auto eq = as.fresh();
          as.slot_term(eq, t, s, 0, as.slot_sign(t, s));
          as.rhs_term(eq, t, 0, minus_one);
          as.commit(eq);
        }
        break;
      }
      case Kind::QC: {
        for (std::size_t s = 1; s < n; ++s) {
          auto eq = as.fresh();
          as.slot_term(eq, t, 0, 0, one);
          as.slot_term(eq, t, s, 0, -as.slot_sign(t, s));
          as.commit(eq);
        }
        break;
      }
      case Kind::QDer: {
        auto eq = as.fresh();
        for (std::size_t s = 0; s < n; ++s) as.slot_term(eq, t, s, 0, as.slot_sign(t, s));
        as.rhs_term(eq, t, 1, minus_one);
        as.commit(eq);
        break;
      }
      case Kind::GDer: {
        auto eq = as.fresh();
        as.slot_term(eq, t, 0, 0, one);
        for (std::size_t s = 1; s < n; ++s) as.slot_term(eq, t, s, s, as.slot_sign(t, s));
        as.rhs_term(eq, t, n, minus_one);
        as.commit(eq);
        break;
      }
    }
  });
}

}  // namespace detail

/// Solves the defining system of `kind` at level alpha^k and parity xi and
/// returns the canonical basis of the D-block projection with witnesses.
inline EndoSubspace solve(const NHomAlgebra& alg, Kind kind, std::size_t k, int xi) {
  const std::size_t d = alg.dim();
  const std::size_t blocks = block_count(kind, alg.arity());
  detail::ConstraintAssembler as(alg, k, xi & 1, blocks);
  as.add_homogeneity();
  as.add_commutation();
  detail::assemble_identities(as, alg, kind);

  const auto joint = SubspaceBasis::span(as.unknowns(), as.reducer().kernel());
  EndoSubspace out;
  out.kind = kind;
  out.k = k;
  out.xi = xi & 1;
  std::vector<Vec> dparts;
  for (std::size_t r = 0; r < joint.dim(); ++r) {
    const Vec& v = joint.vectors()[r];
    std::vector<Mat> wit;
    for (std::size_t b = 1; b < blocks; ++b) wit.push_back(devectorize(v, d, b * d * d));
    if (joint.pivots()[r] < d * d) {
      dparts.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d * d));
      out.basis.push_back({devectorize(v, d), out.xi});
      if (blocks > 1) out.witnesses.push_back(std::move(wit));
    } else {
      out.witness_freedom.push_back(std::move(wit));
    }
  }
  // Rows pivoting in the D block are already reduced echelon on those columns.
  out.space = SubspaceBasis::span(d * d, dparts);
  return out;
}

/// Commutant of alpha in degree xi.
inline EndoSubspace omega(const NHomAlgebra& alg, int xi) { return solve(alg, Kind::Omega, 0, xi); }

// ---------------------------------------------------------------------------
// Membership by direct evaluation of the defining identities

namespace detail {

class IdentityEvaluator {
 public:
  IdentityEvaluator(const NHomAlgebra& alg, std::size_t k) : alg_(alg) {
    const Mat& ak = alg.alpha_power(k);
    for (std::size_t i = 0; i < alg.dim(); ++i) ak_cols_.push_back(to_sparse(ak.col(i)));
  }

  /// [a^k x_1, ..., v (slot s), ..., a^k x_n]
  Vec slot(const Tuple& t, std::size_t s, const Vec& v) const {
    std::vector<SparseVec> args;
    for (std::size_t m = 0; m < t.size(); ++m) args.push_back(m == s ? to_sparse(v) : ak_cols_[t[m]]);
    return bracket_sparse(alg_, args);
  }

  /// [a^k x_1, ..., M(x_s), ..., a^k x_n]
  Vec slot(const Tuple& t, std::size_t s, const Mat& M) const { return slot(t, s, M.col(t[s])); }

  /// Sum over slots of (-1)^{xi |X_{s}|} [..., D(x_s), ...]
  Vec leibniz_sum(const Tuple& t, const Mat& D, int xi) const {
    Vec acc(alg_.dim());
    for (std::size_t s = 0; s < t.size(); ++s) {
      const Vec v = slot(t, s, D);
      const int sg = sign_pow(static_cast<unsigned>(xi) * prefix_parity(alg_, t, s));
      for (std::size_t l = 0; l < acc.size(); ++l) acc[l] += sg * v[l];
    }
    return acc;
  }

 private:
  const NHomAlgebra& alg_;
  std::vector<SparseVec> ak_cols_;
};

inline Vec scaled(const Vec& v, int s) {
  Vec out = v;
  if (s != 1)
    for (auto& x : out) x *= s;
  return out;
}

/// Appends homogeneity and commutation rows (zero right-hand side) for an
/// unknown block occupying columns [offset, offset + d*d) of an augmented system.
inline void add_block_conditions(RowReducer& red, const NHomAlgebra& alg, int xi, std::size_t offset) {
  const std::size_t d = alg.dim();
  const std::size_t cols = red.cols();
  const Mat& a = alg.alpha();
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      if (((alg.parity(r) + alg.parity(c) + xi) & 1) != 0) {
        Vec e(cols);
        e[offset + c * d + r] = 1;
        red.add(std::move(e));
      }
      Vec e(cols);
      for (std::size_t m = 0; m < d; ++m) {
        e[offset + m * d + r] += a(m, c);
        e[offset + c * d + m] -= a(r, m);
      }
      if (!is_zero(e)) red.add(std::move(e));
    }
}

/// Particular solution of an augmented system (last column = right-hand side),
/// or nullopt when inconsistent.
inline std::optional<Vec> particular_solution(const RowReducer& red) {
  const std::size_t n = red.cols() - 1;
  Vec x(n);
  for (std::size_t r = 0; r < red.rank(); ++r) {
    if (red.pivots()[r] == n) return std::nullopt;
    x[red.pivots()[r]] = red.rows()[r][n];
  }
  return x;
}

}  // namespace detail

/// Checks the quasiderivation identity with an explicit witness D'.
inline bool satisfies_qder(const NHomAlgebra& alg, std::size_t k, const GradedEndo& D, const Mat& Dprime) {
  if (!is_homogeneous(alg, D.mat, D.xi) || !is_homogeneous(alg, Dprime, D.xi)) return false;
  if (!commutes_with_alpha(alg, D.mat) || !commutes_with_alpha(alg, Dprime)) return false;
  detail::IdentityEvaluator ev(alg, k);
  bool ok = true;
  for_each_tuple(alg.dim(), alg.arity(), [&](const Tuple& t) {
    if (!ok) return;
    if (ev.leibniz_sum(t, D.mat, D.xi) != Dprime * basis_bracket(alg, t)) ok = false;
  });
  return ok;
}

/// A witness D' for D as an alpha^k-quasiderivation, if one exists.
inline std::optional<Mat> find_qder_witness(const NHomAlgebra& alg, std::size_t k, const GradedEndo& D) {
  const std::size_t d = alg.dim();
  if (!is_homogeneous(alg, D.mat, D.xi) || !commutes_with_alpha(alg, D.mat)) return std::nullopt;
  detail::IdentityEvaluator ev(alg, k);
  RowReducer red(d * d + 1);
  detail::add_block_conditions(red, alg, D.xi, 0);
  bool consistent = true;
  for_each_tuple(d, alg.arity(), [&](const Tuple& t) {
    if (!consistent) return;
    const Vec r = ev.leibniz_sum(t, D.mat, D.xi);
    const Vec b = basis_bracket(alg, t);
    for (std::size_t l = 0; l < d; ++l) {
      Vec row(d * d + 1);
      for (std::size_t m = 0; m < d; ++m) row[m * d + l] = b[m];
      row[d * d] = r[l];
      if (is_zero(row)) continue;
      red.add(std::move(row));
      if (red.pivots().back() == d * d) consistent = false;
    }
  });
  if (!consistent) return std::nullopt;
  auto x = detail::particular_solution(red);
  if (!x) return std::nullopt;
  return devectorize(*x, d);
}

/// Witnesses D^(1), ..., D^(n) for D as a generalized alpha^k-derivation.
inline std::optional<std::vector<Mat>> find_gder_witnesses(const NHomAlgebra& alg, std::size_t k,
                                                           const GradedEndo& D) {
  const std::size_t d = alg.dim();
  const std::size_t n = alg.arity();
  if (!is_homogeneous(alg, D.mat, D.xi) || !commutes_with_alpha(alg, D.mat)) return std::nullopt;
  detail::IdentityEvaluator ev(alg, k);
  const std::size_t nv = n * d * d;  // block w (0-based) holds D^(w+1)
  RowReducer red(nv + 1);
  for (std::size_t w = 0; w < n; ++w) detail::add_block_conditions(red, alg, D.xi, w * d * d);
  bool consistent = true;
  for_each_tuple(d, n, [&](const Tuple& t) {
    if (!consistent) return;
    // sum_{s>=1} sign_s [.., D^(s)(x_s), ..] - D^(n)[x] = -[D x_1, a^k x_2, ...]
    std::vector<Vec> rows(d, Vec(nv + 1));
    const Vec lead = ev.slot(t, 0, D.mat);
    for (std::size_t l = 0; l < d; ++l) rows[l][nv] = -lead[l];
    for (std::size_t s = 1; s < n; ++s) {
      const int sg = sign_pow(static_cast<unsigned>(D.xi) * prefix_parity(alg, t, s));
      for (std::size_t j = 0; j < d; ++j) {
        Vec e(d);
        e[j] = 1;
        const Vec v = ev.slot(t, s, e);
        for (std::size_t l = 0; l < d; ++l)
          if (sgn(v[l]) != 0) rows[l][(s - 1) * d * d + t[s] * d + j] += sg * v[l];
      }
    }
    const Vec b = basis_bracket(alg, t);
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t m = 0; m < d; ++m)
        if (sgn(b[m]) != 0) rows[l][(n - 1) * d * d + m * d + l] -= b[m];
    for (auto& row : rows) {
      if (is_zero(row)) continue;
      red.add(std::move(row));
      if (red.pivots().back() == nv) consistent = false;
    }
  });
  if (!consistent) return std::nullopt;
  auto x = detail::particular_solution(red);
  if (!x) return std::nullopt;
  std::vector<Mat> out;
  for (std::size_t w = 0; w < n; ++w) out.push_back(devectorize(*x, d, w * d * d));
  return out;
}

/// Membership of D by evaluating the defining identity of `kind` on every
/// basis n-tuple. Independent of the solver's constraint assembly.
inline bool in_space(const NHomAlgebra& alg, Kind kind, std::size_t k, int xi, const GradedEndo& D) {
  if ((D.xi & 1) != (xi & 1)) return false;
  if (!is_homogeneous(alg, D.mat, xi) || !commutes_with_alpha(alg, D.mat)) return false;
  const std::size_t n = alg.arity();
  detail::IdentityEvaluator ev(alg, k);
  bool ok = true;
  auto each = [&](auto&& check) {
    for_each_tuple(alg.dim(), n, [&](const Tuple& t) {
      if (ok && !check(t)) ok = false;
    });
  };
  switch (kind) {
    case Kind::Omega: return true;
    case Kind::Der:
      each([&](const Tuple& t) { return ev.leibniz_sum(t, D.mat, xi) == D.mat * basis_bracket(alg, t); });
      return ok;
    case Kind::ZDer:
      each([&](const Tuple& t) {
        return is_zero(ev.slot(t, 0, D.mat)) && is_zero(D.mat * basis_bracket(alg, t));
      });
      return ok;
    case Kind::C:
      each([&](const Tuple& t) {
        const Vec img = D.mat * basis_bracket(alg, t);
        for (std::size_t s = 0; s < n; ++s) {
          const int sg = sign_pow(static_cast<unsigned>(xi) * prefix_parity(alg, t, s));
          if (detail::scaled(ev.slot(t, s, D.mat), sg) != img) return false;
        }
        return true;
      });
      return ok;
    case Kind::QC:
      each([&](const Tuple& t) {
        const Vec first = ev.slot(t, 0, D.mat);
        for (std::size_t s = 1; s < n; ++s) {
          const int sg = sign_pow(static_cast<unsigned>(xi) * prefix_parity(alg, t, s));
          if (detail::scaled(ev.slot(t, s, D.mat), sg) != first) return false;
        }
        return true;
      });
      return ok;
    case Kind::QDer: return find_qder_witness(alg, k, D).has_value();
    case Kind::GDer: return find_gder_witnesses(alg, k, D).has_value();
  }
  return false;
}

/// Lazily solved spaces of one algebra. Levels k whose alpha^k coincide share
/// a single solve.
class SpaceAtlas {
 public:
  explicit SpaceAtlas(NHomAlgebra alg) : alg_(std::move(alg)) {}

  const NHomAlgebra& algebra() const { return alg_; }

  const EndoSubspace& get(Kind kind, std::size_t k, int xi) {
    const auto key = std::make_tuple(kind, k, xi & 1);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const Mat& ak = alg_.alpha_power(k);
    for (auto& [other, space] : cache_) {
      if (std::get<0>(other) == kind && std::get<2>(other) == (xi & 1) && alg_.alpha_power(std::get<1>(other)) == ak) {
        EndoSubspace copy = space;
        copy.k = k;
        return cache_.emplace(key, std::move(copy)).first->second;
      }
    }
    return cache_.emplace(key, solve(alg_, kind, k, xi)).first->second;
  }

  std::size_t dim(Kind kind, std::size_t k, int xi) { return get(kind, k, xi).dim(); }

 private:
  NHomAlgebra alg_;
  std::map<std::tuple<Kind, std::size_t, int>, EndoSubspace> cache_;
};

}  // namespace nhom

#endif  // NHOM_DERIVATIONS_HPP
