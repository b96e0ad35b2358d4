#ifndef NHOM_LINALG_HPP
#define NHOM_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nhom/scalar.hpp"

namespace nhom {

/// Dense row-major rational matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw std::invalid_argument("Mat::from_rows: ragged rows");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  Vec col(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return sgn(x) == 0; });
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Mat& operator+=(const Mat& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Mat& operator*=(const Scalar& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, const Scalar& s) { return a *= s; }
  friend Mat operator*(const Scalar& s, Mat a) { return a *= s; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Mat product: shape mismatch");
    Mat p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (sgn(b(k, j)) != 0) p(i, j) += aik * b(k, j);
        }
      }
    }
    return p;
  }

  friend Vec operator*(const Mat& a, const Vec& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("Mat-vector product: shape mismatch");
    Vec out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (sgn(v[k]) != 0 && sgn(a(i, k)) != 0) out[i] += a(i, k) * v[k];
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

namespace detail {

inline std::size_t leading_index(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) return i;
  return v.size();
}

// v -= f * row, touching only the nonzero entries of row from `from` on.
inline void axpy_row(Vec& v, const Scalar& f, const Vec& row, std::size_t from) {
  for (std::size_t j = from; j < row.size(); ++j)
    if (sgn(row[j]) != 0) v[j] -= f * row[j];
}

}  // namespace detail

/// Incremental Gauss-Jordan elimination. Rows are kept in reduced echelon
/// form sorted by pivot column, so the state after any sequence of `add`
/// calls is the unique RREF of the rows added so far.
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v against the current rows in place.
  void reduce(Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("RowReducer: length mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivots_[r];
      if (sgn(v[p]) == 0) continue;
      const Scalar f = v[p];
      detail::axpy_row(v, f, rows_[r], p);
    }
  }

  /// Adds a row; returns true iff it increased the rank.
  bool add(Vec v) {
    reduce(v);
    const std::size_t p = detail::leading_index(v);
    if (p == cols_) return false;
    const Scalar inv = 1 / v[p];
    for (std::size_t j = p; j < cols_; ++j)
      if (sgn(v[j]) != 0) v[j] *= inv;
    for (auto& row : rows_) {
      if (sgn(row[p]) == 0) continue;
      const Scalar f = row[p];
      detail::axpy_row(row, f, v, p);
    }
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin());
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    return true;
  }

  bool in_row_space(Vec v) const {
    reduce(v);
    return is_zero(v);
  }

  /// Basis of {x : row . x = 0 for every row}, one vector per free column.
  std::vector<Vec> kernel() const {
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    std::vector<Vec> out;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      Vec v(cols_);
      v[f] = 1;
      for (std::size_t r = 0; r < rows_.size(); ++r)
        if (sgn(rows_[r][f]) != 0) v[pivots_[r]] = -rows_[r][f];
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  std::size_t cols_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

inline RrefResult rref(const Mat& m) {
  RowReducer red(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) red.add(m.row(r));
  RrefResult out;
  out.rank = red.rank();
  out.pivots = red.pivots();
  out.reduced = Mat(m.rows(), m.cols());
  for (std::size_t r = 0; r < red.rank(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.reduced(r, c) = red.rows()[r][c];
  return out;
}

inline std::size_t rank(const Mat& m) { return rref(m).rank; }

inline std::optional<Mat> inverse(const Mat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  RowReducer red(2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    Vec v(2 * n);
    for (std::size_t c = 0; c < n; ++c) v[c] = m(r, c);
    v[n + r] = 1;
    red.add(std::move(v));
  }
  for (std::size_t r = 0; r < n; ++r)
    if (r >= red.rank() || red.pivots()[r] != r) return std::nullopt;
  Mat inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red.rows()[r][n + c];
  return inv;
}

/// A linear subspace of Q^ambient held in canonical reduced-echelon form, so
/// two SubspaceBasis values compare equal iff they span the same subspace.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  explicit SubspaceBasis(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  static SubspaceBasis span(std::size_t ambient_dim, const std::vector<Vec>& vectors) {
    RowReducer red(ambient_dim);
    for (const auto& v : vectors) {
      if (v.size() != ambient_dim) throw std::invalid_argument("SubspaceBasis: vector length mismatch");
      red.add(v);
    }
    return from_reducer(red);
  }

  static SubspaceBasis from_reducer(const RowReducer& red) {
    SubspaceBasis s(red.cols());
    s.vectors_ = red.rows();
    s.pivots_ = red.pivots();
    return s;
  }

  static SubspaceBasis full(std::size_t ambient_dim) {
    std::vector<Vec> e;
    for (std::size_t i = 0; i < ambient_dim; ++i) {
      Vec v(ambient_dim);
      v[i] = 1;
      e.push_back(std::move(v));
    }
    return span(ambient_dim, e);
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return vectors_.size(); }
  const std::vector<Vec>& vectors() const { return vectors_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  RowReducer reducer() const {
    RowReducer red(ambient_);
    for (const auto& v : vectors_) red.add(v);
    return red;
  }

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
    return a.ambient_ == b.ambient_ && a.vectors_ == b.vectors_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec> vectors_;
  std::vector<std::size_t> pivots_;
};

inline SubspaceBasis nullspace(const Mat& m) {
  RowReducer red(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) red.add(m.row(r));
  return SubspaceBasis::span(m.cols(), red.kernel());
}

inline bool contains(const SubspaceBasis& a, Vec v) {
  if (v.size() != a.ambient_dim()) throw std::invalid_argument("contains: length mismatch");
  const auto& rows = a.vectors();
  const auto& piv = a.pivots();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (sgn(v[piv[r]]) == 0) continue;
    const Scalar f = v[piv[r]];
    detail::axpy_row(v, f, rows[r], piv[r]);
  }
  return is_zero(v);
}

/// True iff every vector of `inner` lies in `outer`.
inline bool is_subspace(const SubspaceBasis& inner, const SubspaceBasis& outer) {
  if (inner.ambient_dim() != outer.ambient_dim())
    throw std::invalid_argument("is_subspace: ambient dimension mismatch");
  return std::all_of(inner.vectors().begin(), inner.vectors().end(),
                     [&](const Vec& v) { return contains(outer, v); });
}

inline SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("subspace_sum: ambient dimension mismatch");
  RowReducer red = a.reducer();
  for (const auto& v : b.vectors()) red.add(v);
  return SubspaceBasis::from_reducer(red);
}

inline SubspaceBasis subspace_intersect(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("subspace_intersect: ambient dimension mismatch");
  const std::size_t n = a.ambient_dim();
  const std::size_t ka = a.dim();
  const std::size_t kb = b.dim();
  // Solve sum_i s_i a_i - sum_j t_j b_j = 0; each solution yields sum_i s_i a_i.
  Mat sys(n, ka + kb);
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t r = 0; r < n; ++r) sys(r, i) = a.vectors()[i][r];
  for (std::size_t j = 0; j < kb; ++j)
    for (std::size_t r = 0; r < n; ++r) sys(r, ka + j) = -b.vectors()[j][r];
  RowReducer red(ka + kb);
  for (std::size_t r = 0; r < n; ++r) red.add(sys.row(r));
  std::vector<Vec> common;
  for (const auto& coeffs : red.kernel()) {
    Vec v(n);
    for (std::size_t i = 0; i < ka; ++i) {
      if (sgn(coeffs[i]) == 0) continue;
      for (std::size_t r = 0; r < n; ++r) v[r] += coeffs[i] * a.vectors()[i][r];
    }
    common.push_back(std::move(v));
  }
  return SubspaceBasis::span(n, common);
}

/// Complement of `inner` inside span{e_i : i in allowed}, built greedily from
/// standard basis vectors in increasing index order.
inline SubspaceBasis extend_to_complement(const SubspaceBasis& inner, std::vector<std::size_t> allowed) {
  const std::size_t n = inner.ambient_dim();
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  std::vector<bool> is_allowed(n, false);
  for (auto i : allowed) {
    if (i >= n) throw std::invalid_argument("extend_to_complement: index out of range");
    is_allowed[i] = true;
  }
  for (const auto& v : inner.vectors())
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(v[i]) != 0 && !is_allowed[i])
        throw std::invalid_argument("extend_to_complement: inner leaves the allowed coordinates");

  RowReducer red = inner.reducer();
  std::vector<Vec> chosen;
  for (auto i : allowed) {
    Vec e(n);
    e[i] = 1;
    if (red.add(e)) chosen.push_back(std::move(e));
  }
  return SubspaceBasis::span(n, chosen);
}

}  // namespace nhom

#endif  // NHOM_LINALG_HPP
