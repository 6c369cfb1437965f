#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fatpoints/errors.hpp"
#include "fatpoints/prime_field.hpp"
#include "fatpoints/rational.hpp"

namespace fatpoints {

/**
 * Dense row-major matrix over an exact field (Rational or Fp). Desk-scale
 * dimensions throughout, so no sparse storage and no blocking.
 */
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_, d_.empty() ? T() : d_[0]);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Matrix-vector product; v.size() must equal cols().
  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(rows_, T());
    for (std::size_t i = 0; i < rows_; ++i) {
      T acc{};
      bool first = true;
      for (std::size_t j = 0; j < cols_; ++j) {
        const T& a = (*this)(i, j);
        if (first) {
          acc = a * v[j];
          first = false;
        } else {
          acc = acc + a * v[j];
        }
      }
      if (!first) out[i] = acc;
    }
    return out;
  }

  DenseMatrix select_rows(const std::vector<std::size_t>& idx) const {
    DenseMatrix s(idx.size(), cols_, d_.empty() ? T() : d_[0]);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(idx[i], j);
    return s;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> d_;
};

/**
 * In-place reduction to reduced row echelon form over the rationals.
 * Pivot rows are chosen by minimal bit length of the candidate entry, which
 * keeps intermediate fractions small; the result (canonical RREF) does not
 * depend on that choice. Returns the pivot columns in increasing order.
 */
inline std::vector<std::size_t> rref(DenseMatrix<Rational>& m) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    std::size_t best_bits = 0;
    for (std::size_t i = row; i < m.rows(); ++i) {
      if (m(i, col).is_zero()) continue;
      const std::size_t bits = m(i, col).bit_length();
      if (best == m.rows() || bits < best_bits) {
        best = i;
        best_bits = bits;
      }
    }
    if (best == m.rows()) continue;
    m.swap_rows(row, best);
    const Rational inv = m(row, col).reciprocal();
    m(row, col) = Rational(1);
    for (std::size_t j = col + 1; j < m.cols(); ++j)
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Rational f = m(i, col);
      m(i, col) = Rational(0);
      for (std::size_t j = col + 1; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  return pivot_cols;
}

/// Rank over the rationals by exact elimination.
inline std::size_t rank_exact(DenseMatrix<Rational> m) { return rref(m).size(); }

/**
 * Canonical basis of the right kernel, one vector per free column in
 * increasing column order (the standard basis read off the RREF). Each
 * vector satisfies M v = 0 exactly; the basis depends only on the matrix,
 * never on pivot choices.
 */
inline std::vector<std::vector<Rational>> kernel_basis(DenseMatrix<Rational> m) {
  const std::size_t cols = m.cols();
  const std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = Rational(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Elimination summary over a prime field. pivot_rows holds the *original*
/// indices of the rows where pivots were found.
struct FpElimination {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
};

inline FpElimination fp_eliminate(DenseMatrix<Fp> m) {
  FpElimination out;
  std::vector<std::size_t> origin(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) origin[i] = i;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = m.rows();
    for (std::size_t i = row; i < m.rows(); ++i) {
      if (!m(i, col).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv == m.rows()) continue;
    m.swap_rows(row, piv);
    std::swap(origin[row], origin[piv]);
    const Fp inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      if (m(i, col).is_zero()) continue;
      const Fp f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) = m(i, j) - f * m(row, j);
    }
    out.pivot_rows.push_back(origin[row]);
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.rank = out.pivot_cols.size();
  return out;
}

inline void require_admissible_prime(std::uint64_t p) {
  if (p <= (1ULL << 30) || !is_prime_u64(p))
    throw InvalidInput("modulus must be a prime greater than 2^30");
}

/// Entrywise reduction mod p. Throws BadPrime when any denominator is
/// divisible by p.
inline DenseMatrix<Fp> reduce_mod_p(const DenseMatrix<Rational>& m, std::uint64_t p) {
  DenseMatrix<Fp> out(m.rows(), m.cols(), Fp::zero(p));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = Fp::from_rational(m(i, j), p);
  return out;
}

/// Rank of the reduction mod p. Always <= rank_exact of the same matrix.
inline std::size_t rank_mod_p(const DenseMatrix<Rational>& m, std::uint64_t p) {
  require_admissible_prime(p);
  return fp_eliminate(reduce_mod_p(m, p)).rank;
}

/// RREF-canonicalizes a set of vectors spanning a subspace: stacks them as
/// rows, reduces, returns the nonzero rows. Output depends only on the span.
inline std::vector<std::vector<Rational>> canonical_span(
    const std::vector<std::vector<Rational>>& vecs, std::size_t dim) {
  DenseMatrix<Rational> m(vecs.size(), dim);
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vecs[i][j];
  const std::size_t r = rref(m).size();
  std::vector<std::vector<Rational>> out;
  out.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rational> v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = m(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

/**
 * Exact kernel computed through a modular shortcut: eliminate mod p to find
 * a set R of rows that is independent mod p, solve the exact kernel of the
 * R-submatrix, then cut it down by the remaining rows. The composition is
 * exact for every prime — an unlucky p only costs extra work, never a wrong
 * answer. Output equals kernel_basis(m) (both are canonical for the span).
 */
inline std::vector<std::vector<Rational>> kernel_via_modular_rows(
    const DenseMatrix<Rational>& m, const std::vector<std::size_t>& independent_rows) {
  const std::size_t cols = m.cols();
  if (independent_rows.size() >= m.rows()) return kernel_basis(m);

  std::vector<std::vector<Rational>> w = kernel_basis(m.select_rows(independent_rows));
  if (w.empty()) return {};

  std::vector<bool> used(m.rows(), false);
  for (std::size_t i : independent_rows) used[i] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!used[i]) rest.push_back(i);

  // Residual: how the remaining rows act on the candidate kernel.
  DenseMatrix<Rational> residual(rest.size(), w.size());
  bool residual_zero = true;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      Rational acc(0);
      for (std::size_t j = 0; j < cols; ++j) {
        const Rational& a = m(rest[i], j);
        if (!a.is_zero() && !w[k][j].is_zero()) acc += a * w[k][j];
      }
      if (!acc.is_zero()) residual_zero = false;
      residual(i, k) = std::move(acc);
    }
  }
  if (residual_zero) return w;

  // Unlucky prime: the true kernel is the sub-span killed by the residual.
  std::vector<std::vector<Rational>> combos = kernel_basis(std::move(residual));
  std::vector<std::vector<Rational>> vecs;
  vecs.reserve(combos.size());
  for (const auto& c : combos) {
    std::vector<Rational> v(cols, Rational(0));
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (c[k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!w[k][j].is_zero()) v[j] += c[k] * w[k][j];
    }
    vecs.push_back(std::move(v));
  }
  return canonical_span(vecs, cols);
}

}  // namespace fatpoints
