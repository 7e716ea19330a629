#ifndef CHN_LINALG_HPP
#define CHN_LINALG_HPP

#include <chn/field.hpp>

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chn {

template <class F>
using Vec = std::vector<F>;

// ---------------------------------------------------------------------------
// Vector helpers

template <class F>
Vec<F> zeros(std::size_t n) {
  return Vec<F>(n, F(0));
}

template <class F>
Vec<F> unit_vector(std::size_t n, std::size_t i) {
  Vec<F> v(n, F(0));
  v[i] = F(1);
  return v;
}

template <class F>
bool is_zero_vec(std::span<const F> v) {
  return std::all_of(v.begin(), v.end(), [](const F& x) { return is_zero(x); });
}

template <class F>
bool is_zero_vec(const Vec<F>& v) {
  return is_zero_vec(std::span<const F>(v));
}

template <class F>
F dot(const Vec<F>& a, const Vec<F>& b) {
  assert(a.size() == b.size());
  F s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i]) || is_zero(b[i])) continue;
    s += a[i] * b[i];
  }
  return s;
}

template <class F>
Vec<F> operator+(Vec<F> a, const Vec<F>& b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class F>
Vec<F> operator-(Vec<F> a, const Vec<F>& b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class F>
Vec<F> operator-(Vec<F> a) {
  for (auto& x : a) x = -x;
  return a;
}

template <class F>
Vec<F> operator*(const F& s, Vec<F> a) {
  for (auto& x : a) x *= s;
  return a;
}

/// y += s * x
template <class F>
void axpy(Vec<F>& y, const F& s, const Vec<F>& x) {
  assert(x.size() == y.size());
  if (is_zero(s)) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!is_zero(x[i])) y[i] += s * x[i];
  }
}

template <class F>
bool vec_equal(const Vec<F>& a, const Vec<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!is_zero(F(a[i] - b[i]))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Dense matrix

template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  /// Matrix whose rows are the given vectors.
  static Matrix from_rows(const std::vector<Vec<F>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      assert(rows[r].size() == cols);
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<Vec<F>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      assert(cols[c].size() == rows);
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec<F> row(std::size_t r) const { return Vec<F>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }
  Vec<F> column(std::size_t c) const {
    Vec<F> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Vec<F> apply(const Vec<F>& v) const {
    assert(v.size() == cols_);
    Vec<F> out(rows_, F(0));
    for (std::size_t c = 0; c < cols_; ++c) {
      if (is_zero(v[c])) continue;
      for (std::size_t r = 0; r < rows_; ++r) {
        const F& m = (*this)(r, c);
        if (!is_zero(m)) out[r] += m * v[c];
      }
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const F& bkj = b(k, j);
          if (!is_zero(bkj)) out(i, j) += aik * bkj;
        }
      }
    return out;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator*(const F& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  bool is_zero_matrix() const { return is_zero_vec(std::span<const F>(data_)); }
  const std::vector<F>& data() const { return data_; }

  /// Stack rows of `below` under this matrix.
  Matrix vstack(const Matrix& below) const {
    assert(below.cols_ == cols_);
    Matrix m(rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), m.data_.begin() + data_.size());
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

// ---------------------------------------------------------------------------
// Row reduction

template <class F>
struct Echelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form. Exact fields take the first nonzero pivot so the
/// result is canonical; the float field takes the largest one.
template <class F>
Echelon<F> rref(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    if constexpr (field_traits<F>::exact) {
      for (std::size_t r = row; r < m.rows(); ++r)
        if (!is_zero(m(r, col))) {
          best = r;
          break;
        }
    } else {
      double best_abs = 0.0;
      for (std::size_t r = row; r < m.rows(); ++r) {
        double a = std::fabs(field_traits<F>::to_double(m(r, col)));
        if (!is_zero(m(r, col)) && a > best_abs) {
          best_abs = a;
          best = r;
        }
      }
    }
    if (best == m.rows()) continue;
    if (best != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(best, c));
    F inv = F(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    m(row, col) = F(1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      F factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!is_zero(m(row, c))) m(r, c) -= factor * m(row, c);
      }
      m(r, col) = F(0);
    }
    pivots.push_back(col);
    ++row;
  }
  if constexpr (!field_traits<F>::exact) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (is_zero(m(r, c))) m(r, c) = F(0);
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).pivots.size();
}

/// Basis of {x : m x = 0}; one vector per free column, free entry set to 1,
/// ordered by free column. Deterministic for exact fields.
template <class F>
std::vector<Vec<F>> nullspace(const Matrix<F>& m) {
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(m.cols(), F(0));
    v[free] = F(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b, or nullopt when inconsistent.
template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& a, const Vec<F>& b) {
  assert(b.size() == a.rows());
  Matrix<F> aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto [red, pivots] = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vec<F> x(a.cols(), F(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = red(i, a.cols());
  return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  Matrix<F> aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = F(1);
  }
  auto [red, pivots] = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red(r, n + c);
  return inv;
}

/// Pivots of Gaussian elimination without row exchanges; these are the
/// ratios of consecutive leading principal minors. Returns nullopt when a
/// zero pivot appears.
template <class F>
std::optional<Vec<F>> leading_pivots(Matrix<F> m) {
  const std::size_t n = m.rows();
  Vec<F> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (is_zero(m(k, k))) return std::nullopt;
    out.push_back(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (is_zero(m(r, k))) continue;
      F f = m(r, k) / m(k, k);
      for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subspaces in coordinates

/// A linear subspace of F^m held as an RREF basis, so membership tests and
/// coordinates are read off the pivot columns.
template <class F>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<Vec<F>>& vectors) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    auto [red, pivots] = rref(Matrix<F>::from_rows(vectors, ambient));
    for (std::size_t i = 0; i < pivots.size(); ++i) s.basis_.push_back(red.row(i));
    s.pivots_ = std::move(pivots);
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec<F>>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v minus its elimination against the basis; zero iff v is in the span.
  Vec<F> reduce(Vec<F> v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      F c = v[pivots_[i]];
      if (!is_zero(c)) axpy(v, F(-c), basis_[i]);
    }
    return v;
  }

  bool contains(const Vec<F>& v) const { return is_zero_vec(reduce(v)); }

  /// Coefficients of v in the RREF basis, nullopt if v is outside.
  std::optional<Vec<F>> coordinates(const Vec<F>& v) const {
    if (!contains(v)) return std::nullopt;
    Vec<F> c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  bool operator==(const Subspace& o) const {
    if (ambient_ != o.ambient_ || dim() != o.dim()) return false;
    for (const auto& b : o.basis_)
      if (!contains(b)) return false;
    return true;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec<F>> basis_;
  std::vector<std::size_t> pivots_;
};

/// Linear combinations sum_i c_i basis[i] for each coefficient vector c.
template <class F>
std::vector<Vec<F>> combine(const std::vector<Vec<F>>& basis, const std::vector<Vec<F>>& coeffs, std::size_t dim) {
  std::vector<Vec<F>> out;
  for (const auto& c : coeffs) {
    Vec<F> v(dim, F(0));
    for (std::size_t i = 0; i < c.size(); ++i) axpy(v, c[i], basis[i]);
    out.push_back(std::move(v));
  }
  return out;
}

/// Orthogonal (not normalized) basis with stored squared norms.
template <class F>
struct OrthogonalBasis {
  std::vector<Vec<F>> vectors;
  std::vector<F> norm2;

  std::size_t size() const { return vectors.size(); }

  /// Component of v along the span, sum <v,w>/|w|^2 w.
  Vec<F> project(const Vec<F>& v, const std::function<F(const Vec<F>&, const Vec<F>&)>& inner) const {
    Vec<F> out(v.size(), F(0));
    for (std::size_t i = 0; i < vectors.size(); ++i) axpy(out, F(inner(v, vectors[i]) / norm2[i]), vectors[i]);
    return out;
  }
};

/// Gram-Schmidt without square roots; vectors dependent on earlier ones are dropped.
template <class F, class Inner>
OrthogonalBasis<F> orthogonalize(const std::vector<Vec<F>>& input, Inner inner, const OrthogonalBasis<F>* against = nullptr) {
  OrthogonalBasis<F> out;
  for (const auto& v0 : input) {
    Vec<F> v = v0;
    if (against)
      for (std::size_t i = 0; i < against->vectors.size(); ++i)
        axpy(v, F(-inner(v0, against->vectors[i]) / against->norm2[i]), against->vectors[i]);
    for (std::size_t i = 0; i < out.vectors.size(); ++i)
      axpy(v, F(-inner(v, out.vectors[i]) / out.norm2[i]), out.vectors[i]);
    if (is_zero_vec(v)) continue;
    F n2 = inner(v, v);
    if (is_zero(n2)) continue;
    out.vectors.push_back(std::move(v));
    out.norm2.push_back(n2);
  }
  return out;
}

template <class F>
OrthogonalBasis<F> orthogonalize(const std::vector<Vec<F>>& input) {
  return orthogonalize(input, [](const Vec<F>& a, const Vec<F>& b) { return dot(a, b); });
}

}  // namespace chn

#endif  // CHN_LINALG_HPP
