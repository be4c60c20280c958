#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gmorita/scalar.hpp"

namespace gmorita {

/// Coordinate vector over a single field.
using Vector = std::vector<Scalar>;

inline Vector zero_vector(const Field& f, std::size_t n) { return Vector(n, f.zero()); }

inline Vector unit_vector(const Field& f, std::size_t n, std::size_t i) {
  Vector v = zero_vector(f, n);
  v.at(i) = f.one();
  return v;
}

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

inline Vector operator+(Vector a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "vector sizes differ");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vector operator-(Vector a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "vector sizes differ");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline Vector operator*(const Scalar& s, Vector v) {
  for (auto& x : v) x *= s;
  return v;
}

/// Dense row-major matrix of exact scalars. Every entry lives in field().
class Matrix {
 public:
  Matrix() = default;

  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  static Matrix from_rows(const Field& f, std::initializer_list<std::initializer_list<long long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(f, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
      std::size_t j = 0;
      for (long long v : row) m(i, j++) = f.from_int(v);
      ++i;
    }
    return m;
  }

  static Matrix from_columns(const Field& f, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
    return m;
  }

  static Matrix column_matrix(const Field& f, const Vector& v) { return from_columns(f, v.size(), {v}); }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t j) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  void set_column(std::size_t j, const Vector& v) {
    if (v.size() != rows_) throw Error(ErrorCode::ShapeMismatch, "column length");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  /// Column-major flattening; the coordinate vector of a linear map.
  Vector flatten() const {
    Vector v;
    v.reserve(rows_ * cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  static Matrix unflatten(const Field& f, std::size_t rows, std::size_t cols, const Vector& v) {
    if (v.size() != rows * cols) throw Error(ErrorCode::ShapeMismatch, "unflatten length");
    Matrix m(f, rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = v[j * rows + i];
    return m;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Scalar& s, Matrix m) {
    for (auto& x : m.data_) x *= s;
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::ShapeMismatch, "matrix product shapes");
    if (!(a.field_ == b.field_)) throw Error(ErrorCode::ScalarKindMismatch, "matrix product fields");
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
        }
      }
    }
    return c;
  }

  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) throw Error(ErrorCode::ShapeMismatch, "matrix-vector shapes");
    Vector out = zero_vector(a.field_, a.rows_);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (v[k].is_zero()) continue;
      for (std::size_t i = 0; i < a.rows_; ++i) {
        if (!a(i, k).is_zero()) out[i] += a(i, k) * v[k];
      }
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::ShapeMismatch, "matrix shapes differ");
    if (!(field_ == o.field_)) throw Error(ErrorCode::ScalarKindMismatch, "matrix fields differ");
  }

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Horizontal concatenation [a | b].
inline Matrix hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "hconcat row counts");
  if (!(a.field() == b.field())) throw Error(ErrorCode::ScalarKindMismatch, "hconcat fields");
  Matrix m(a.field(), a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

/// Block-diagonal sum.
inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

/// Reduced row echelon form together with its pivot columns.
struct EchelonForm {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;

  std::size_t rank() const { return pivot_cols.size(); }
};

namespace detail {

inline EchelonForm row_reduce_prime(const Matrix& a) {
  const auto p = static_cast<long long>(a.field().modulus());
  const std::size_t R = a.rows(), C = a.cols();
  std::vector<long long> m(R * C);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) m[i * C + j] = a(i, j).residue_value();

  auto inv = [p](long long x) {
    long long r = 1, e = p - 2;
    x %= p;
    while (e > 0) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = r;
    while (piv < R && m[piv * C + c] == 0) ++piv;
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(m[piv * C + j], m[r * C + j]);
    const long long s = inv(m[r * C + c]);
    for (std::size_t j = c; j < C; ++j) m[r * C + j] = m[r * C + j] * s % p;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r) continue;
      const long long f = m[i * C + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < C; ++j) {
        m[i * C + j] = (m[i * C + j] - f * m[r * C + j]) % p;
        if (m[i * C + j] < 0) m[i * C + j] += p;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix out(a.field(), R, C);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) out(i, j) = Scalar(a.field(), m[i * C + j]);
  return {std::move(out), std::move(pivots)};
}

// Fraction-free (Bareiss) forward elimination on integer-scaled rows, then
// rational back substitution to reach the reduced form.
inline EchelonForm row_reduce_rational(const Matrix& a) {
  const std::size_t R = a.rows(), C = a.cols();
  std::vector<mpz_class> m(R * C);
  for (std::size_t i = 0; i < R; ++i) {
    mpz_class scale = 1;
    for (std::size_t j = 0; j < C; ++j) {
      const auto& q = a(i, j).rational_value();
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den().get_mpz_t());
    }
    for (std::size_t j = 0; j < C; ++j) {
      const auto& q = a(i, j).rational_value();
      m[i * C + j] = q.get_num() * (scale / q.get_den());
    }
  }

  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  std::size_t r = 0;
  mpz_class t;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = r;
    while (piv < R && m[piv * C + c] == 0) ++piv;
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(m[piv * C + j], m[r * C + j]);
    const mpz_class& p = m[r * C + c];
    for (std::size_t i = r + 1; i < R; ++i) {
      const mpz_class f = m[i * C + c];
      for (std::size_t j = c + 1; j < C; ++j) {
        t = p * m[i * C + j] - f * m[r * C + j];
        mpz_divexact(m[i * C + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i * C + c] = 0;
    }
    prev = p;
    pivots.push_back(c);
    ++r;
  }

  std::vector<mpq_class> q(R * C);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < C; ++j) q[i * C + j] = mpq_class(m[i * C + j]);
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const std::size_t pc = pivots[k];
    const mpq_class s = 1 / q[k * C + pc];
    for (std::size_t j = pc; j < C; ++j) q[k * C + j] *= s;
    for (std::size_t i = 0; i < k; ++i) {
      const mpq_class f = q[i * C + pc];
      if (f == 0) continue;
      for (std::size_t j = pc; j < C; ++j) q[i * C + j] -= f * q[k * C + j];
    }
  }
  Matrix out(a.field(), R, C);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < C; ++j) out(i, j) = Scalar(q[i * C + j]);
  return {std::move(out), std::move(pivots)};
}

}  // namespace detail

inline EchelonForm row_reduce(const Matrix& a) {
  return a.field().is_prime() ? detail::row_reduce_prime(a) : detail::row_reduce_rational(a);
}

inline std::size_t rank(const Matrix& a) { return row_reduce(a).rank(); }

/// Basis of the right null space, as plain vectors.
inline std::vector<Vector> kernel_vectors(const Matrix& a) {
  const auto ef = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : ef.pivot_cols) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(a.field(), a.cols());
    v[f] = a.field().one();
    for (std::size_t i = 0; i < ef.pivot_cols.size(); ++i) v[ef.pivot_cols[i]] = -ef.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Basis of the right null space as column matrices; empty iff `a` is injective.
inline std::vector<Matrix> kernel_basis(const Matrix& a) {
  std::vector<Matrix> out;
  for (auto& v : kernel_vectors(a)) out.push_back(Matrix::column_matrix(a.field(), v));
  return out;
}

/// Some x with a·x = b, or nullopt when the system is inconsistent.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "solve: row counts differ");
  if (!(a.field() == b.field())) throw Error(ErrorCode::ScalarKindMismatch, "solve: " + a.field().name() + " vs " + b.field().name());
  const auto ef = row_reduce(hconcat(a, b));
  Matrix x(a.field(), a.cols(), b.cols());
  for (std::size_t i = 0; i < ef.pivot_cols.size(); ++i) {
    const std::size_t pc = ef.pivot_cols[i];
    if (pc >= a.cols()) return std::nullopt;
    for (std::size_t k = 0; k < b.cols(); ++k) x(pc, k) = ef.reduced(i, a.cols() + k);
  }
  return x;
}

inline std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  auto x = solve(a, Matrix::column_matrix(a.field(), b));
  if (!x) return std::nullopt;
  return x->column(0);
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve(a, Matrix::identity(a.field(), a.rows()));
}

inline bool is_invertible(const Matrix& a) { return a.is_square() && rank(a) == a.rows(); }

inline Scalar determinant(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  const Field& f = a.field();
  if (n == 0) return f.one();
  Matrix m = a;
  Scalar det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const Scalar inv = m(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const Scalar s = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= s * m(c, j);
    }
  }
  return det;
}

/// Coordinates with respect to a fixed linearly independent family. Picks a
/// set of rows on which the family is invertible once, so each lookup costs
/// one small matrix-vector product plus a membership check.
class SpanCoordinates {
 public:
  SpanCoordinates() = default;

  SpanCoordinates(const Field& f, std::size_t ambient_dim, std::vector<Vector> basis)
      : field_(f), ambient_dim_(ambient_dim), basis_(Matrix::from_columns(f, ambient_dim, basis)) {
    const auto ef = row_reduce(basis_.transpose());
    if (ef.rank() != basis.size()) throw Error(ErrorCode::ShapeMismatch, "span basis is linearly dependent");
    rows_ = ef.pivot_cols;
    Matrix square(f, rows_.size(), rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < rows_.size(); ++j) square(i, j) = basis_(rows_[i], j);
    inverse_ = *inverse(square);
  }

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient_dim() const { return ambient_dim_; }
  const Matrix& basis_matrix() const { return basis_; }

  std::optional<Vector> coordinates(const Vector& v) const {
    if (v.size() != ambient_dim_) throw Error(ErrorCode::ShapeMismatch, "coordinates: wrong length");
    Vector restricted;
    restricted.reserve(rows_.size());
    for (auto r : rows_) restricted.push_back(v[r]);
    Vector c = inverse_ * restricted;
    if (!(basis_ * c == v)) return std::nullopt;
    return c;
  }

  Vector coordinates_or_throw(const Vector& v, const char* what) const {
    auto c = coordinates(v);
    if (!c) throw Error(ErrorCode::NotClosed, std::string(what) + ": vector outside the span");
    return *c;
  }

  bool contains(const Vector& v) const { return coordinates(v).has_value(); }

 private:
  Field field_;
  std::size_t ambient_dim_ = 0;
  Matrix basis_;
  std::vector<std::size_t> rows_;
  Matrix inverse_;
};

}  // namespace gmorita
