#pragma once

#include <Eigen/Dense>

#include <string>

#include "siegelkit/scalar.hpp"

namespace siegelkit {

using Index = Eigen::Index;

using IntegerMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RealMatrix = Eigen::Matrix<BigFloat, Eigen::Dynamic, Eigen::Dynamic>;
using RealVector = Eigen::Matrix<BigFloat, Eigen::Dynamic, 1>;

/// Exact determinants and subset enumeration stay tractable up to here.
inline constexpr Index kMaxDim = 16;

/// Throws ShapeError unless m is square with 1 <= n <= kMaxDim.
template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1 || m.rows() > kMaxDim)
    throw ShapeError(std::string(what) + ": expected a square matrix with dimension in [1, " +
                     std::to_string(kMaxDim) + "], got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
}

template <typename Derived>
bool is_exactly_zero(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != Scalar(0)) return false;
  return true;
}

/// Largest absolute entry; 0 for empty matrices.
BigFloat max_abs(const RealMatrix& m);
BigFloat max_abs(const RealVector& v);

RationalMatrix to_rational(const IntegerMatrix& m);
/// Throws DomainError if any entry has denominator > 1.
IntegerMatrix to_integer(const RationalMatrix& m);

/// Entrywise correctly-rounded conversion at the current working precision.
RealMatrix rational_lift(const RationalMatrix& m);
RealMatrix integer_lift(const IntegerMatrix& m);

/// Matrix text format shared by all modules and the CLI: rows separated by
/// ';', entries by whitespace, each entry "a" or "a/b". Example: "1/2 3; 0 1".
RationalMatrix parse_matrix_text(const std::string& text);
/// JSON alternative: array of arrays of entry strings.
RationalMatrix parse_matrix_json(const std::string& text);
/// Accepts either format (JSON when the payload starts with '[').
RationalMatrix parse_matrix_any(const std::string& text);

std::string format_matrix_text(const RationalMatrix& m);
std::string format_matrix_text(const IntegerMatrix& m);

/// Multi-line display form; real entries use `digits` significant digits.
std::string format_matrix_display(const RealMatrix& m, int digits);
std::string format_matrix_display(const RationalMatrix& m);
std::string format_matrix_display(const IntegerMatrix& m);

}  // namespace siegelkit
