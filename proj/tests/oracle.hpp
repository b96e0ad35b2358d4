#pragma once

// Brute-force reference used to confirm solver dimensions. It shares only the
// raw structure constants with the library: signs come from inversion counts
// over full (non-canonical) index tuples, the constraint matrix is assembled
// one column at a time by pushing elementary matrices through a dense
// evaluator, and rank uses its own elimination.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nhom/algebra.hpp"

namespace oracle {

using Q = mpq_class;
using Dense = std::vector<std::vector<Q>>;  // row-major square matrix
using Vector = std::vector<Q>;

struct Tensor {
  std::size_t n = 0, d = 0;
  std::vector<int> par;
  std::vector<Vector> value;  // indexed by the tuple read as a base-d number
  Dense alpha;

  std::size_t flat(const std::vector<std::size_t>& t) const {
    std::size_t f = 0;
    for (auto i : t) f = f * d + i;
    return f;
  }
  std::vector<std::size_t> unflat(std::size_t f) const {
    std::vector<std::size_t> t(n);
    for (std::size_t j = n; j-- > 0;) {
      t[j] = f % d;
      f /= d;
    }
    return t;
  }
  std::size_t tuples() const {
    std::size_t c = 1;
    for (std::size_t j = 0; j < n; ++j) c *= d;
    return c;
  }
};

inline Tensor build_tensor(const nhom::NHomAlgebra& alg) {
  Tensor T;
  T.n = alg.arity();
  T.d = alg.dim();
  T.par = alg.parity();
  T.alpha.assign(T.d, Vector(T.d));
  for (std::size_t r = 0; r < T.d; ++r)
    for (std::size_t c = 0; c < T.d; ++c) T.alpha[r][c] = alg.alpha()(r, c);
  T.value.assign(T.tuples(), Vector(T.d));
  for (std::size_t f = 0; f < T.tuples(); ++f) {
    const auto t = T.unflat(f);
    // a repeated even index kills the bracket
    bool dead = false;
    for (std::size_t a = 0; a < T.n; ++a)
      for (std::size_t b = a + 1; b < T.n; ++b)
        if (t[a] == t[b] && T.par[t[a]] == 0) dead = true;
    if (dead) continue;
    int sign = 1;
    for (std::size_t a = 0; a < T.n; ++a)
      for (std::size_t b = a + 1; b < T.n; ++b)
        if (t[a] > t[b]) sign *= (T.par[t[a]] == 1 && T.par[t[b]] == 1) ? 1 : -1;
    auto sorted = t;
    std::sort(sorted.begin(), sorted.end());
    auto it = alg.table().find(sorted);
    if (it == alg.table().end()) continue;
    for (std::size_t l = 0; l < T.d; ++l) T.value[f][l] = Q(sign) * it->second[l];
  }
  return T;
}

// Multilinear bracket of dense arguments, expanding over nonzero coordinates.
inline Vector bracket(const Tensor& T, const std::vector<Vector>& args) {
  Vector out(T.d);
  std::vector<std::size_t> idx(T.n);
  std::vector<std::vector<std::size_t>> nz(T.n);
  for (std::size_t j = 0; j < T.n; ++j)
    for (std::size_t i = 0; i < T.d; ++i)
      if (args[j][i] != 0) nz[j].push_back(i);
  std::vector<std::size_t> pos(T.n, 0);
  for (std::size_t j = 0; j < T.n; ++j)
    if (nz[j].empty()) return out;
  while (true) {
    Q coeff = 1;
    for (std::size_t j = 0; j < T.n; ++j) {
      idx[j] = nz[j][pos[j]];
      coeff *= args[j][idx[j]];
    }
    const auto& v = T.value[T.flat(idx)];
    for (std::size_t l = 0; l < T.d; ++l)
      if (v[l] != 0) out[l] += coeff * v[l];
    std::size_t j = T.n;
    while (j > 0) {
      --j;
      if (++pos[j] < nz[j].size()) break;
      pos[j] = 0;
      if (j == 0) return out;
    }
  }
}

inline Dense multiply(const Dense& a, const Dense& b) {
  const std::size_t d = a.size();
  Dense c(d, Vector(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < d; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Dense power(const Dense& a, std::size_t k) {
  const std::size_t d = a.size();
  Dense p(d, Vector(d));
  for (std::size_t i = 0; i < d; ++i) p[i][i] = 1;
  for (std::size_t s = 0; s < k; ++s) p = multiply(a, p);
  return p;
}

inline Vector transform(const Dense& m, const Vector& v) {
  Vector out(m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  return out;
}

inline Vector column(const Dense& m, std::size_t c) {
  Vector v(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) v[r] = m[r][c];
  return v;
}

inline std::size_t rank(std::vector<Vector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Q f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

enum class Kind { Omega, Der, ZDer, C, QC, QDer, GDer };

inline std::size_t blocks(Kind kind, std::size_t n) {
  if (kind == Kind::QDer) return 2;
  if (kind == Kind::GDer) return n + 1;
  return 1;
}

// Residual of every defining equation for the given unknown blocks.
inline Vector residual(const Tensor& T, Kind kind, std::size_t k, int xi, const std::vector<Dense>& M) {
  const Dense A = power(T.alpha, k);
  const std::size_t d = T.d, n = T.n;
  Vector out;
  auto push = [&](const Vector& v) { out.insert(out.end(), v.begin(), v.end()); };
  for (std::size_t f = 0; f < T.tuples(); ++f) {
    const auto t = T.unflat(f);
    // term(s, m) = (-1)^{xi (p_1 + ... + p_s)} [A x_1, ..., m x_s, ..., A x_n]
    auto term = [&](std::size_t s, const Dense& m) {
      std::vector<Vector> args(n);
      int before = 0;
      for (std::size_t j = 0; j < n; ++j) {
        args[j] = column(j == s ? m : A, t[j]);
        if (j < s) before += T.par[t[j]];
      }
      Vector v = bracket(T, args);
      if ((xi * before) % 2 == 1)
        for (auto& x : v) x = -x;
      return v;
    };
    auto rhs = [&](const Dense& m) { return transform(m, T.value[f]); };
    auto minus = [&](Vector a, const Vector& b) {
      for (std::size_t l = 0; l < d; ++l) a[l] -= b[l];
      return a;
    };
    switch (kind) {
      case Kind::Omega: break;
      case Kind::Der:
      case Kind::QDer: {
        Vector r = rhs(kind == Kind::Der ? M[0] : M[1]);
        for (std::size_t s = 0; s < n; ++s) r = minus(r, term(s, M[0]));
        push(r);
        break;
      }
      case Kind::ZDer:
        push(term(0, M[0]));
        push(rhs(M[0]));
        break;
      case Kind::C:
        for (std::size_t s = 0; s < n; ++s) push(minus(term(s, M[0]), rhs(M[0])));
        break;
      case Kind::QC:
        for (std::size_t s = 1; s < n; ++s) push(minus(term(0, M[0]), term(s, M[0])));
        break;
      case Kind::GDer: {
        Vector lhs = term(0, M[0]);
        for (std::size_t s = 1; s < n; ++s) lhs = minus(lhs, minus(Vector(d), term(s, M[s])));
        push(minus(lhs, rhs(M[n])));
        break;
      }
    }
  }
  // every block: degree xi and commuting with alpha
  for (const auto& m : M) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if ((T.par[r] + T.par[c] + xi) % 2 == 1) out.push_back(m[r][c]);
    const Dense ma = multiply(m, T.alpha), am = multiply(T.alpha, m);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out.push_back(ma[r][c] - am[r][c]);
  }
  return out;
}

// Dimension of the projection onto the first block of the joint solution set:
// nullity(all columns) - nullity(witness columns alone).
inline std::size_t dimension(const nhom::NHomAlgebra& alg, Kind kind, std::size_t k, int xi) {
  const Tensor T = build_tensor(alg);
  const std::size_t d = T.d, nb = blocks(kind, T.n);
  std::vector<Vector> cols;
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r) {
        std::vector<Dense> M(nb, Dense(d, Vector(d)));
        M[b][r][c] = 1;
        cols.push_back(residual(T, kind, k, xi, M));
      }
  // rank of a matrix equals rank of its transpose; work with columns as rows
  const std::size_t all = cols.size();
  const std::size_t joint_nullity = all - rank(cols);
  std::vector<Vector> witness(cols.begin() + static_cast<std::ptrdiff_t>(d * d), cols.end());
  const std::size_t witness_nullity = witness.size() - rank(witness);
  return joint_nullity - witness_nullity;
}

inline std::size_t center_dimension(const nhom::NHomAlgebra& alg) {
  const Tensor T = build_tensor(alg);
  std::vector<Vector> cols;
  for (std::size_t z = 0; z < T.d; ++z) {
    Vector col;
    for (std::size_t f = 0; f < T.tuples(); ++f) {
      const auto t = T.unflat(f);
      if (t[0] != z) continue;
      col.insert(col.end(), T.value[f].begin(), T.value[f].end());
    }
    cols.push_back(std::move(col));
  }
  return T.d - rank(cols);
}

// Hom-Nambu identity on all basis tuples; returns the number of violated instances.
inline std::size_t jacobi_violations(const nhom::NHomAlgebra& alg) {
  const Tensor T = build_tensor(alg);
  const std::size_t n = T.n, d = T.d;
  std::size_t total = 1;
  for (std::size_t j = 0; j < 2 * n - 1; ++j) total *= d;
  std::size_t bad = 0;
  for (std::size_t f = 0; f < total; ++f) {
    std::vector<std::size_t> idx(2 * n - 1);
    std::size_t g = f;
    for (std::size_t j = idx.size(); j-- > 0;) {
      idx[j] = g % d;
      g /= d;
    }
    auto e = [&](std::size_t i) {
      Vector v(d);
      v[i] = 1;
      return v;
    };
    int xpar = 0;
    std::vector<Vector> xs, ys;
    for (std::size_t j = 0; j < n - 1; ++j) {
      xs.push_back(e(idx[j]));
      xpar += T.par[idx[j]];
    }
    for (std::size_t j = n - 1; j < idx.size(); ++j) ys.push_back(e(idx[j]));
    std::vector<Vector> lhs_args;
    for (auto& x : xs) lhs_args.push_back(transform(T.alpha, x));
    lhs_args.push_back(bracket(T, ys));
    Vector diff = bracket(T, lhs_args);
    int ypar = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Vector> inner = xs;
      inner.push_back(ys[i]);
      std::vector<Vector> args;
      for (std::size_t j = 0; j < n; ++j) args.push_back(j == i ? bracket(T, inner) : transform(T.alpha, ys[j]));
      Vector v = bracket(T, args);
      const bool neg = (xpar * ypar) % 2 == 1;
      for (std::size_t l = 0; l < d; ++l) diff[l] -= neg ? -v[l] : v[l];
      ypar += T.par[idx[n - 1 + i]];
    }
    for (const auto& x : diff)
      if (x != 0) {
        ++bad;
        break;
      }
  }
  return bad;
}

}  // namespace oracle
