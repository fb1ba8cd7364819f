#pragma once

// Exact linear algebra on dense Eigen matrices whose scalar is an integer or
// an exact rational.  Everything is reduced to fraction-free (Bareiss)
// elimination over BigInt, so no intermediate value is ever rounded.

#include "logsurf/error.hpp"
#include "logsurf/rational.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <utility>

namespace logsurf {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Symmetric matrix (the symmetry is checked by the operations consuming it).
template <typename Scalar>
using SymMatrix = Matrix<Scalar>;

namespace detail {

template <typename Scalar>
Rat to_rat(const Scalar& s) {
  return Rat(s);
}

inline BigInt num_of(const Rat& r) { return BigInt(boost::multiprecision::numerator(r)); }
inline BigInt den_of(const Rat& r) { return BigInt(boost::multiprecision::denominator(r)); }

// Integer matrix equal to L*[M | B] for the least positive common denominator L
// of all entries.  Scaling by a positive constant keeps the solution of M x = B
// and the signs of every principal minor.
struct ScaledSystem {
  Matrix<BigInt> entries;
  BigInt scale;
};

template <typename DerivedM, typename DerivedB>
ScaledSystem scaled_integer_augmented(const Eigen::MatrixBase<DerivedM>& m,
                                      const Eigen::MatrixBase<DerivedB>& b) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols() + b.cols();
  BigInt common = 1;
  Matrix<Rat> aug(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      aug(i, j) = j < m.cols() ? to_rat(m(i, j)) : to_rat(b(i, j - m.cols()));
      common = boost::multiprecision::lcm(common, den_of(aug(i, j)));
    }
  }
  Matrix<BigInt> out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      out(i, j) = num_of(aug(i, j)) * (common / den_of(aug(i, j)));
  return {std::move(out), std::move(common)};
}

// In-place Bareiss elimination with row pivoting over the first `n` columns.
// Returns the rank deficiency flag and the permutation parity.  On success the
// leading n x n block is upper triangular and a(n-1, n-1) = +-det.
struct BareissOutcome {
  bool singular = false;
  bool odd_permutation = false;
};

inline BareissOutcome bareiss_pivoted(Matrix<BigInt>& a, Eigen::Index n) {
  BareissOutcome outcome;
  BigInt prev = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    while (pivot < n && a(pivot, k) == 0) ++pivot;
    if (pivot == n) {
      outcome.singular = true;
      return outcome;
    }
    if (pivot != k) {
      a.row(k).swap(a.row(pivot));
      outcome.odd_permutation = !outcome.odd_permutation;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < a.cols(); ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return outcome;
}

}  // namespace detail

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

/// Exact determinant.  The empty matrix has determinant 1.
template <typename Derived>
Rat determinant(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw Error(Errc::InvalidState, "determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return Rat(1);
  Matrix<Rat> none(n, 0);
  auto [a, common] = detail::scaled_integer_augmented(m, none);
  const auto outcome = detail::bareiss_pivoted(a, n);
  if (outcome.singular) return Rat(0);
  Rat det(a(n - 1, n - 1));
  if (outcome.odd_permutation) det = -det;
  BigInt scale = boost::multiprecision::pow(common, static_cast<unsigned>(n));
  return det / Rat(scale);
}

/// True iff sign(det_k) = (-1)^k for every leading principal minor det_k.
/// Fraction-free elimination without pivoting: after step k the pivot equals
/// the (k+1)-th leading minor, so a zero or wrongly signed pivot stops early.
template <typename Derived>
bool is_negative_definite(const Eigen::MatrixBase<Derived>& m) {
  if (!is_symmetric(m)) throw Error(Errc::NotSymmetric, "negative definiteness needs a symmetric matrix");
  const Eigen::Index n = m.rows();
  Matrix<Rat> none(n, 0);
  Matrix<BigInt> a = detail::scaled_integer_augmented(m, none).entries;
  BigInt prev = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    const BigInt& minor = a(k, k);
    const bool want_negative = (k % 2) == 0;  // det_{k+1} has sign (-1)^(k+1)
    if (minor == 0 || (minor < 0) != want_negative) return false;
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return true;
}

/// Unique exact x with M x = b.  Throws Error(SingularMatrix) when det M = 0.
template <typename DerivedM, typename DerivedB>
Vector<Rat> solve_symmetric(const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedB>& b) {
  if (!is_symmetric(m)) throw Error(Errc::NotSymmetric, "solve_symmetric needs a symmetric matrix");
  if (b.cols() != 1 || b.rows() != m.rows())
    throw Error(Errc::InvalidState, "right-hand side has the wrong shape");
  const Eigen::Index n = m.rows();
  Matrix<BigInt> a = detail::scaled_integer_augmented(m, b).entries;
  if (detail::bareiss_pivoted(a, n).singular) throw Error(Errc::SingularMatrix, "matrix is singular");
  Vector<Rat> x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Rat acc(a(i, n));
    for (Eigen::Index j = i + 1; j < n; ++j) acc -= Rat(a(i, j)) * x(j);
    x(i) = acc / Rat(a(i, i));
  }
  return x;
}

}  // namespace logsurf
