#pragma once

// Exact scalars and dense exact linear algebra.

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gkz {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;
using RatRowVector = RowVector<Rational>;

// Accepts "p/q", integers and finite decimals ("0.25", "-1e-3" is rejected).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

Integer floor(const Rational& x);
Rational frac(const Rational& x);  // x - floor(x), in [0,1)
bool is_integral(const Rational& x);
double to_double(const Rational& x);
double to_double(const Integer& x);

template <class Derived>
auto to_rational(const Eigen::MatrixBase<Derived>& m) {
  Eigen::Matrix<Rational, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

template <class Derived>
auto to_double(const Eigen::MatrixBase<Derived>& m) {
  Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

template <class Derived>
bool all_integral(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_integral(m(i, j))) return false;
  return true;
}

// Clears denominators and common factors: the primitive integer vector on the
// same ray. Zero stays zero.
IntVector primitive(const RatVector& v);

// Reduced row echelon form over an exact field.
template <class Scalar>
struct Echelon {
  Matrix<Scalar> reduced;
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
};

template <class Scalar>
Echelon<Scalar> reduced_row_echelon(Matrix<Scalar> m) {
  Echelon<Scalar> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = row;
    while (piv < m.rows() && m(piv, col) == Scalar(0)) ++piv;
    if (piv == m.rows()) continue;
    m.row(row).swap(m.row(piv));
    const Scalar lead = m(row, col);
    m.row(row) /= lead;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == Scalar(0)) continue;
      const Scalar f = m(r, col);
      m.row(r) -= f * m.row(row);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class Scalar>
Eigen::Index rank(const Matrix<Scalar>& m) {
  return static_cast<Eigen::Index>(reduced_row_echelon(m).pivots.size());
}

inline Eigen::Index rank(const IntMatrix& m) { return rank(to_rational(m)); }

template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  const Eigen::Index n = m.rows();
  Scalar det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    while (piv < n && m(piv, c) == Scalar(0)) ++piv;
    if (piv == n) return Scalar(0);
    if (piv != c) {
      m.row(c).swap(m.row(piv));
      det = -det;
    }
    det *= m(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (m(r, c) == Scalar(0)) continue;
      const Scalar f = m(r, c) / m(c, c);
      m.row(r) -= f * m.row(c);
    }
  }
  return det;
}

// Elimination divides, so integer input goes through the rationals.
inline Integer determinant(const IntMatrix& m) { return mp::numerator(determinant(to_rational(m))); }

template <class Scalar>
std::optional<Matrix<Scalar>> inverse(const Matrix<Scalar>& m) {
  const Eigen::Index n = m.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  auto e = reduced_row_echelon(std::move(aug));
  if (static_cast<Eigen::Index>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1)
    return std::nullopt;
  return Matrix<Scalar>(e.reduced.rightCols(n));
}

// Columns form a basis of the right kernel.
template <class Scalar>
Matrix<Scalar> nullspace(const Matrix<Scalar>& m) {
  auto e = reduced_row_echelon(m);
  std::vector<bool> isPivot(m.cols(), false);
  for (auto p : e.pivots) isPivot[p] = true;
  Matrix<Scalar> basis(m.cols(), m.cols() - static_cast<Eigen::Index>(e.pivots.size()));
  basis.setZero();
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (isPivot[free]) continue;
    basis(free, k) = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, free);
    ++k;
  }
  return basis;
}

// Some solution of m x = b, if any.
template <class Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& m, const Vector<Scalar>& b) {
  Matrix<Scalar> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  auto e = reduced_row_echelon(std::move(aug));
  Vector<Scalar> x = Vector<Scalar>::Zero(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x(e.pivots[r]) = e.reduced(r, m.cols());
  }
  return x;
}

}  // namespace gkz
