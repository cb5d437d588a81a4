#pragma once

// Dense exact linear algebra over the rationals: vectors, matrices,
// reduced row echelon form, kernels and determinants.
//
// Kernel and complement bases are canonicalized through RREF so that every
// construction downstream (Gale vectors, quotient coordinates) is
// deterministic for a given input.  Determinants use fraction-free Bareiss
// elimination on a denominator-cleared integer matrix to keep intermediate
// operands small.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chroma/rational.hpp"

namespace chroma {

class QVec {
 public:
  QVec() = default;
  explicit QVec(std::size_t dim) : c_(dim) {}
  QVec(std::initializer_list<Rat> xs) : c_(xs) {}
  explicit QVec(std::vector<Rat> xs) : c_(std::move(xs)) {}

  std::size_t dim() const { return c_.size(); }
  Rat& operator[](std::size_t i) { return c_[i]; }
  const Rat& operator[](std::size_t i) const { return c_[i]; }

  const std::vector<Rat>& coords() const { return c_; }

  bool is_zero() const {
    for (const Rat& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  QVec& operator+=(const QVec& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  QVec& operator-=(const QVec& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  QVec& operator*=(const Rat& s) {
    for (Rat& x : c_) x *= s;
    return *this;
  }

  friend QVec operator+(QVec a, const QVec& b) { return a += b; }
  friend QVec operator-(QVec a, const QVec& b) { return a -= b; }
  friend QVec operator*(const Rat& s, QVec a) { return a *= s; }
  friend QVec operator-(QVec a) {
    for (Rat& x : a.c_) x = -x;
    return a;
  }

  friend bool operator==(const QVec& a, const QVec& b) { return a.c_ == b.c_; }
  friend bool operator!=(const QVec& a, const QVec& b) { return !(a == b); }

  friend Rat dot(const QVec& a, const QVec& b) {
    a.check_dim(b);
    Rat s;
    for (std::size_t i = 0; i < a.c_.size(); ++i) s += a.c_[i] * b.c_[i];
    return s;
  }

 private:
  void check_dim(const QVec& o) const {
    if (c_.size() != o.c_.size())
      throw std::invalid_argument("QVec: dimension mismatch");
  }
  std::vector<Rat> c_;
};

class QMat {
 public:
  QMat() : rows_(0), cols_(0) {}
  QMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}

  static QMat identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rat(1);
    return m;
  }

  static QMat from_rows(const std::vector<QVec>& rows) {
    if (rows.empty()) return QMat();
    QMat m(rows.size(), rows[0].dim());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].dim() != m.cols_)
        throw std::invalid_argument("QMat: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  static QMat from_cols(const std::vector<QVec>& cols) {
    return from_rows(cols).transpose();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  QVec row(std::size_t i) const {
    QVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
  }
  QVec col(std::size_t j) const {
    QVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
  }

  QMat transpose() const {
    QMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend QMat operator*(const QMat& a, const QMat& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("QMat: size mismatch in product");
    QMat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return c;
  }

  friend QVec operator*(const QMat& a, const QVec& x) {
    if (a.cols_ != x.dim())
      throw std::invalid_argument("QMat: size mismatch in Ax");
    QVec y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a.at(i, j) * x[j];
    return y;
  }

  friend bool operator==(const QMat& a, const QMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  bool is_zero() const {
    for (const Rat& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> e_;
};

// In-place reduced row echelon form; returns the pivot column indices in
// increasing order (their count is the rank).
inline std::vector<std::size_t> rref(QMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = Rat(1) / m.at(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Rat f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(QMat m) { return rref(m).size(); }

// Canonical basis of the right kernel {x : m x = 0}, one column per free
// column of the RREF, with a 1 in the free coordinate.
inline QMat null_basis(const QMat& m) {
  QMat r = m;
  std::vector<std::size_t> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::size_t nfree = m.cols() - pivots.size();
  QMat basis(m.cols(), nfree);
  std::size_t k = 0;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    basis.at(f, k) = Rat(1);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      basis.at(pivots[pi], k) = -r.at(pi, f);
    ++k;
  }
  return basis;
}

// Basis (as columns) of the orthogonal complement of the column space of m.
inline QMat orth_complement(const QMat& m) { return null_basis(m.transpose()); }

// One exact solution of m x = b with free variables set to zero, or nullopt
// if the system is inconsistent.
inline std::optional<QVec> solve(const QMat& m, const QVec& b) {
  if (m.rows() != b.dim())
    throw std::invalid_argument("solve: rhs dimension mismatch");
  QMat aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  QVec x(m.cols());
  for (std::size_t pi = 0; pi < pivots.size(); ++pi)
    x[pivots[pi]] = aug.at(pi, m.cols());
  return x;
}

// Determinant by Bareiss fraction-free elimination.  Rows are first scaled
// by their denominator lcm so all intermediate divisions are exact integer
// divisions; the scales are divided back out at the end.
inline Rat det(const QMat& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("det: matrix not square");
  std::size_t n = m.rows();
  if (n == 0) return Rat(1);

  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).den().get_mpz_t());
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = m.at(i, j).num() * (l / m.at(i, j).den());
    scale *= l;
  }

  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return Rat(0);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  mpq_class d(sign * a[n - 1][n - 1], scale);
  d.canonicalize();
  return Rat(d);
}

// Coordinates on the quotient of the ambient space by the row span of a
// matrix.  Reduction against the echelon form clears the pivot
// coordinates; what survives on the free columns identifies the class.
class QuotientMap {
 public:
  explicit QuotientMap(QMat rows) : rows_(std::move(rows)) {
    pivots_ = rref(rows_);
    std::vector<bool> is_pivot(rows_.cols(), false);
    for (std::size_t c : pivots_) is_pivot[c] = true;
    for (std::size_t c = 0; c < rows_.cols(); ++c)
      if (!is_pivot[c]) free_.push_back(c);
  }

  std::size_t ambient() const { return rows_.cols(); }
  std::size_t dim() const { return free_.size(); }

  QVec apply(const QVec& x) const {
    if (x.dim() != rows_.cols())
      throw std::invalid_argument("quotient: dimension mismatch");
    QVec y = x;
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      Rat f = y[pivots_[r]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < rows_.cols(); ++c)
        y[c] = y[c] - f * rows_.at(r, c);
    }
    QVec out(free_.size());
    for (std::size_t i = 0; i < free_.size(); ++i) out[i] = y[free_[i]];
    return out;
  }

 private:
  QMat rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_;
};

}  // namespace chroma
