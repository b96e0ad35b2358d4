#ifndef NHOM_ALGEBRA_HPP
#define NHOM_ALGEBRA_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nhom/linalg.hpp"
#include "nhom/scalar.hpp"

namespace nhom {

using Tuple = std::vector<std::size_t>;
/// Structure constants keyed by weakly increasing index tuples; absent keys
/// mean a zero bracket.
using BracketTable = std::map<Tuple, Vec>;

struct CanonicalTuple {
  Tuple indices;
  int sign = 1;  // +1, -1, or 0 when the bracket is forced to vanish
};

/// Sorts a basis tuple into weakly increasing order by adjacent transpositions.
/// Each swap of x_i, x_{i+1} contributes -(-1)^{|x_i||x_{i+1}|}. A repeated
/// even index forces the bracket to zero; a repeated odd index does not.
inline CanonicalTuple canonicalize_tuple(std::span<const std::size_t> indices,
                                         std::span<const int> parity) {
  CanonicalTuple out{Tuple(indices.begin(), indices.end()), 1};
  for (auto i : out.indices)
    if (i >= parity.size()) throw std::out_of_range("canonicalize_tuple: index out of range");
  auto& t = out.indices;
  for (std::size_t pass = 0; pass + 1 < t.size(); ++pass) {
    for (std::size_t j = 0; j + 1 < t.size() - pass; ++j) {
      if (t[j] > t[j + 1]) {
        const bool both_odd = parity[t[j]] == 1 && parity[t[j + 1]] == 1;
        if (!both_odd) out.sign = -out.sign;
        std::swap(t[j], t[j + 1]);
      }
    }
  }
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    if (t[j] == t[j + 1] && parity[t[j]] == 0) {
      out.sign = 0;
      break;
    }
  }
  return out;
}

namespace detail {

struct AlphaPowerCache {
  std::mutex mu;
  std::map<std::size_t, Mat> powers;
};

}  // namespace detail

/// Finite-dimensional multiplicative n-Hom Lie superalgebra given by
/// structure constants on a homogeneous basis e_0..e_{d-1}.
class NHomAlgebra {
 public:
  NHomAlgebra(std::size_t arity, std::vector<int> parity, BracketTable table, Mat alpha)
      : arity_(arity),
        parity_(std::move(parity)),
        alpha_(std::move(alpha)),
        cache_(std::make_shared<detail::AlphaPowerCache>()) {
    if (arity_ < 2) throw std::invalid_argument("arity must be at least 2");
    const std::size_t d = parity_.size();
    for (auto p : parity_)
      if (p != 0 && p != 1) throw std::invalid_argument("parity entries must be 0 or 1");
    if (alpha_.rows() != d || alpha_.cols() != d)
      throw std::invalid_argument("alpha must be a dim x dim matrix");
    for (auto& [key, value] : table) {
      if (key.size() != arity_) throw std::invalid_argument("bracket tuple length differs from arity");
      for (std::size_t j = 0; j < key.size(); ++j) {
        if (key[j] >= d) throw std::invalid_argument("bracket index out of range");
        if (j > 0 && key[j - 1] > key[j]) throw std::invalid_argument("bracket tuple is not weakly increasing");
      }
      if (value.size() != d) throw std::invalid_argument("bracket value length differs from dim");
      if (!is_zero(value)) table_.emplace(key, std::move(value));
    }
  }

  std::size_t arity() const { return arity_; }
  std::size_t dim() const { return parity_.size(); }
  const std::vector<int>& parity() const { return parity_; }
  int parity(std::size_t i) const { return parity_[i]; }
  const BracketTable& table() const { return table_; }
  const Mat& alpha() const { return alpha_; }

  /// Stored value of a canonical tuple, or nullptr for zero.
  const Vec* lookup(const Tuple& canonical) const {
    auto it = table_.find(canonical);
    return it == table_.end() ? nullptr : &it->second;
  }

  /// alpha^k, alpha^0 = identity. Memoized and shared between copies.
  const Mat& alpha_power(std::size_t k) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto& pw = cache_->powers;
    if (pw.empty()) pw.emplace(0, Mat::identity(dim()));
    auto it = pw.find(k);
    if (it != pw.end()) return it->second;
    std::size_t top = pw.rbegin()->first;
    while (top < k) {
      Mat next = alpha_ * pw.at(top);
      pw.emplace(++top, std::move(next));
    }
    return pw.at(k);
  }

  std::vector<std::size_t> indices_of_parity(int p) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (parity_[i] == p) out.push_back(i);
    return out;
  }

 private:
  std::size_t arity_;
  std::vector<int> parity_;
  BracketTable table_;
  Mat alpha_;
  std::shared_ptr<detail::AlphaPowerCache> cache_;
};

/// Sparse coordinate view of a vector: (index, coefficient) pairs.
using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

inline SparseVec to_sparse(const Vec& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) s.emplace_back(i, v[i]);
  return s;
}

inline SparseVec unit_sparse(std::size_t i) { return SparseVec{{i, Scalar(1)}}; }

/// Adds coeff * [e_t] to acc for a basis tuple t (any order).
inline void accumulate_basis_bracket(const NHomAlgebra& alg, const Tuple& t, const Scalar& coeff, Vec& acc) {
  const auto canon = canonicalize_tuple(t, alg.parity());
  if (canon.sign == 0) return;
  const Vec* value = alg.lookup(canon.indices);
  if (value == nullptr) return;
  const Scalar c = canon.sign * coeff;
  for (std::size_t l = 0; l < value->size(); ++l)
    if (sgn((*value)[l]) != 0) acc[l] += c * (*value)[l];
}

/// Multilinear bracket of sparse arguments, accumulated into acc with a factor.
inline void accumulate_bracket(const NHomAlgebra& alg, std::span<const SparseVec> args, const Scalar& factor,
                               Vec& acc) {
  if (args.size() != alg.arity()) throw std::invalid_argument("bracket: arity mismatch");
  for (const auto& a : args)
    if (a.empty()) return;
  Tuple t(args.size());
  std::vector<std::size_t> pos(args.size(), 0);
  while (true) {
    Scalar coeff = factor;
    for (std::size_t s = 0; s < args.size(); ++s) {
      t[s] = args[s][pos[s]].first;
      coeff *= args[s][pos[s]].second;
    }
    accumulate_basis_bracket(alg, t, coeff, acc);
    std::size_t s = args.size();
    while (s > 0) {
      --s;
      if (++pos[s] < args[s].size()) break;
      pos[s] = 0;
      if (s == 0) return;
    }
  }
}

inline Vec bracket_sparse(const NHomAlgebra& alg, std::span<const SparseVec> args) {
  Vec acc(alg.dim());
  accumulate_bracket(alg, args, Scalar(1), acc);
  return acc;
}

/// [args_1, ..., args_n] by multilinear expansion over basis tuples.
inline Vec bracket(const NHomAlgebra& alg, std::span<const Vec> args) {
  if (args.size() != alg.arity()) throw std::invalid_argument("bracket: arity mismatch");
  std::vector<SparseVec> sp;
  sp.reserve(args.size());
  for (const auto& a : args) {
    if (a.size() != alg.dim()) throw std::invalid_argument("bracket: argument length mismatch");
    sp.push_back(to_sparse(a));
  }
  return bracket_sparse(alg, sp);
}

/// Bracket of basis vectors e_{t_1}, ..., e_{t_n}.
inline Vec basis_bracket(const NHomAlgebra& alg, const Tuple& t) {
  Vec acc(alg.dim());
  accumulate_basis_bracket(alg, t, Scalar(1), acc);
  return acc;
}

inline const Mat& alpha_power(const NHomAlgebra& alg, std::size_t k) { return alg.alpha_power(k); }

inline bool is_alpha_surjective(const NHomAlgebra& alg) { return rank(alg.alpha()) == alg.dim(); }

/// Calls f(t) for every tuple in {0..d-1}^len, lexicographically.
template <class F>
void for_each_tuple(std::size_t d, std::size_t len, F&& f) {
  if (d == 0 && len > 0) return;
  Tuple t(len, 0);
  while (true) {
    f(static_cast<const Tuple&>(t));
    std::size_t s = len;
    while (s > 0) {
      --s;
      if (++t[s] < d) break;
      t[s] = 0;
      if (s == 0) return;
    }
    if (len == 0) return;
  }
}

/// Parity sum |X_m| = |x_0| + ... + |x_{m-1}| of a basis tuple prefix.
inline unsigned prefix_parity(const NHomAlgebra& alg, const Tuple& t, std::size_t m) {
  unsigned s = 0;
  for (std::size_t j = 0; j < m; ++j) s += static_cast<unsigned>(alg.parity(t[j]));
  return s & 1u;
}

// ---------------------------------------------------------------------------
// Axiom validation

struct ValidationFailure {
  std::string axiom;
  Tuple witness;
  Vec residual;
};

struct ValidationReport {
  bool skew_ok = true;
  bool jacobi_ok = true;
  bool multiplicative_ok = true;
  bool even_alpha_ok = true;
  bool degree_ok = true;
  std::vector<ValidationFailure> failures;

  bool ok() const { return failures.empty(); }
};

namespace detail {

constexpr std::size_t kMaxWitnessesPerAxiom = 8;

inline void record(ValidationReport& rep, bool& flag, std::size_t& count, const std::string& axiom, Tuple witness,
                   Vec residual) {
  flag = false;
  if (count++ < kMaxWitnessesPerAxiom) rep.failures.push_back({axiom, std::move(witness), std::move(residual)});
}

}  // namespace detail

/// Exhaustive check of the structural axioms on basis tuples: table form,
/// super skew-symmetry, degree law, evenness of alpha, multiplicativity and
/// the n-Hom-Jacobi identity.
inline ValidationReport validate(const NHomAlgebra& alg) {
  ValidationReport rep;
  const std::size_t d = alg.dim();
  const std::size_t n = alg.arity();
  std::size_t n_skew = 0, n_degree = 0, n_even = 0, n_mult = 0, n_jacobi = 0;

  // (a) table form and degree law on stored tuples
  for (const auto& [key, value] : alg.table()) {
    for (std::size_t j = 0; j + 1 < key.size(); ++j) {
      if (key[j] == key[j + 1] && alg.parity(key[j]) == 0) {
        detail::record(rep, rep.skew_ok, n_skew, "skew: repeated even index stored nonzero", key, value);
        break;
      }
    }
    const int p = static_cast<int>(prefix_parity(alg, key, key.size()));
    Vec bad(d);
    bool any = false;
    for (std::size_t l = 0; l < d; ++l) {
      if (sgn(value[l]) != 0 && alg.parity(l) != p) {
        bad[l] = value[l];
        any = true;
      }
    }
    if (any) detail::record(rep, rep.degree_ok, n_degree, "degree", key, bad);
  }

  // (e) alpha even
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      if (alg.parity(j) != alg.parity(i) && sgn(alg.alpha()(j, i)) != 0) {
        Vec col = alg.alpha().col(i);
        detail::record(rep, rep.even_alpha_ok, n_even, "even_alpha", Tuple{i}, col);
        break;
      }
    }
  }

  std::vector<SparseVec> alpha_cols(d);
  for (std::size_t i = 0; i < d; ++i) alpha_cols[i] = to_sparse(alg.alpha().col(i));

  // (b) skew-symmetry and (c) multiplicativity on every basis n-tuple
  for_each_tuple(d, n, [&](const Tuple& t) {
    const Vec base = basis_bracket(alg, t);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      Tuple s = t;
      std::swap(s[j], s[j + 1]);
      const Vec swapped = basis_bracket(alg, s);
      const bool both_odd = alg.parity(t[j]) == 1 && alg.parity(t[j + 1]) == 1;
      Vec res(d);
      bool bad = false;
      for (std::size_t l = 0; l < d; ++l) {
        res[l] = both_odd ? Scalar(base[l] - swapped[l]) : Scalar(base[l] + swapped[l]);
        if (sgn(res[l]) != 0) bad = true;
      }
      if (bad) detail::record(rep, rep.skew_ok, n_skew, "skew", t, res);
    }
    Vec lhs = alg.alpha() * base;
    std::vector<SparseVec> args;
    for (auto i : t) args.push_back(alpha_cols[i]);
    const Vec rhs = bracket_sparse(alg, args);
    bool bad = false;
    for (std::size_t l = 0; l < d; ++l) {
      lhs[l] -= rhs[l];
      if (sgn(lhs[l]) != 0) bad = true;
    }
    if (bad) detail::record(rep, rep.multiplicative_ok, n_mult, "multiplicative", t, lhs);
  });

  // (d) n-Hom-Jacobi on all (x_1..x_{n-1}; y_1..y_n)
  for_each_tuple(d, 2 * n - 1, [&](const Tuple& t) {
    const Tuple xs(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n - 1));
    const Tuple ys(t.begin() + static_cast<std::ptrdiff_t>(n - 1), t.end());
    const unsigned px = prefix_parity(alg, xs, xs.size());

    std::vector<SparseVec> args;
    for (auto x : xs) args.push_back(alpha_cols[x]);
    args.push_back(to_sparse(basis_bracket(alg, ys)));
    Vec res = bracket_sparse(alg, args);

    for (std::size_t i = 0; i < n; ++i) {
      Tuple inner = xs;
      inner.push_back(ys[i]);
      std::vector<SparseVec> outer;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i)
          outer.push_back(to_sparse(basis_bracket(alg, inner)));
        else
          outer.push_back(alpha_cols[ys[j]]);
      }
      const unsigned py = prefix_parity(alg, ys, i);
      accumulate_bracket(alg, outer, Scalar(-sign_pow(px * py)), res);
    }
    if (!is_zero(res)) detail::record(rep, rep.jacobi_ok, n_jacobi, "jacobi", t, res);
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Center and derived subspace

/// A Z2-graded subspace of N, one SubspaceBasis per parity.
struct GradedSubspace {
  SubspaceBasis even;
  SubspaceBasis odd;

  std::size_t dim() const { return even.dim() + odd.dim(); }
  const SubspaceBasis& part(int p) const { return p == 0 ? even : odd; }
  SubspaceBasis total() const { return subspace_sum(even, odd); }
};

namespace detail {

inline SubspaceBasis restrict_to_parity(const NHomAlgebra& alg, const RowReducer& base, int p) {
  RowReducer red = base;
  const std::size_t d = alg.dim();
  for (std::size_t i = 0; i < d; ++i) {
    if (alg.parity(i) == p) continue;
    Vec e(d);
    e[i] = 1;
    red.add(std::move(e));
  }
  return SubspaceBasis::span(d, red.kernel());
}

}  // namespace detail

/// Z(N): x with [x, y_2, ..., y_n] = 0 for all y, per parity.
inline GradedSubspace center(const NHomAlgebra& alg) {
  const std::size_t d = alg.dim();
  RowReducer red(d);
  for_each_tuple(d, alg.arity() - 1, [&](const Tuple& rest) {
    // row l of the map x -> [x, e_rest]
    std::vector<Vec> rows(d, Vec(d));
    for (std::size_t i = 0; i < d; ++i) {
      Tuple t{i};
      t.insert(t.end(), rest.begin(), rest.end());
      const Vec v = basis_bracket(alg, t);
      for (std::size_t l = 0; l < d; ++l) rows[l][i] = v[l];
    }
    for (auto& r : rows)
      if (!is_zero(r)) red.add(std::move(r));
  });
  return {detail::restrict_to_parity(alg, red, 0), detail::restrict_to_parity(alg, red, 1)};
}

/// [N, ..., N] per parity.
inline GradedSubspace derived_subspace(const NHomAlgebra& alg) {
  const std::size_t d = alg.dim();
  RowReducer even(d), odd(d);
  for (const auto& [key, value] : alg.table()) {
    Vec ve(d), vo(d);
    for (std::size_t l = 0; l < d; ++l) (alg.parity(l) == 0 ? ve : vo)[l] = value[l];
    even.add(std::move(ve));
    odd.add(std::move(vo));
  }
  return {SubspaceBasis::from_reducer(even), SubspaceBasis::from_reducer(odd)};
}

// ---------------------------------------------------------------------------
// Basis change

inline bool is_even_map(const NHomAlgebra& alg, const Mat& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (alg.parity(r) != alg.parity(c) && sgn(m(r, c)) != 0) return false;
  return true;
}

/// The same algebra written in the basis f_i = sum_j P(j,i) e_j. P must be
/// even and invertible.
inline NHomAlgebra change_basis(const NHomAlgebra& alg, const Mat& P) {
  const std::size_t d = alg.dim();
  if (P.rows() != d || P.cols() != d) throw std::invalid_argument("change_basis: P has the wrong shape");
  if (!is_even_map(alg, P)) throw std::invalid_argument("change_basis: P is not even");
  const auto Pinv = inverse(P);
  if (!Pinv) throw std::invalid_argument("change_basis: P is singular");

  std::vector<SparseVec> cols(d);
  for (std::size_t i = 0; i < d; ++i) cols[i] = to_sparse(P.col(i));
  BracketTable table;
  for_each_tuple(d, alg.arity(), [&](const Tuple& t) {
    for (std::size_t j = 0; j + 1 < t.size(); ++j)
      if (t[j] > t[j + 1]) return;
    std::vector<SparseVec> args;
    for (auto i : t) args.push_back(cols[i]);
    Vec v = (*Pinv) * bracket_sparse(alg, args);
    if (!is_zero(v)) table.emplace(t, std::move(v));
  });
  return NHomAlgebra(alg.arity(), alg.parity(), std::move(table), (*Pinv) * alg.alpha() * P);
}

}  // namespace nhom

#endif  // NHOM_ALGEBRA_HPP
