#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <type_traits>

namespace dgauge {

using Complex = std::complex<double>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

enum class ScalarKind { Real, Complex };

template <typename Scalar>
inline constexpr bool is_complex_v = !std::is_same_v<Scalar, typename Eigen::NumTraits<Scalar>::Real>;

template <typename Scalar>
inline constexpr ScalarKind scalar_kind_v = is_complex_v<Scalar> ? ScalarKind::Complex : ScalarKind::Real;

// Relative threshold on |det| below which a matrix counts as singular.
inline constexpr double kSingularDetTolerance = 1e-12;

/// Chebyshev (max absolute entry) norm. Zero for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return static_cast<double>(m.cwiseAbs().maxCoeff());
}

/// True when |det m| exceeds kSingularDetTolerance * (max|m_ij|)^n and every
/// entry is finite.
template <typename Derived>
bool is_invertible(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  if (!m.allFinite()) return false;
  const double scale = max_abs(m);
  if (scale == 0.0) return false;
  const auto n = static_cast<double>(m.rows());
  const double det = std::abs(m.derived().eval().partialPivLu().determinant());
  return std::isfinite(det) && det > kSingularDetTolerance * std::pow(scale, n);
}

/// LU inverse with partial pivoting. Callers check invertibility first.
template <typename Scalar>
Mat<Scalar> inverse(const Mat<Scalar>& m) {
  return m.partialPivLu().inverse();
}

}  // namespace dgauge
