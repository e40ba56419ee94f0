#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "dgauge/connection.hpp"
#include "dgauge/laxpair.hpp"

namespace dgauge {

/// The engine recorded in config headers. Its output sequence is fixed by
/// the C++ standard; doubles are formed from the top 53 bits so draws do not
/// depend on the standard library's distribution implementations.
using Rng = std::mt19937_64;
inline constexpr const char* kRngName = "mt19937_64";

/// Uniform in [0, 1).
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
/// Uniform in [lo, hi).
inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

template <typename Scalar>
Scalar uniform_scalar(Rng& rng, double lo, double hi) {
  if constexpr (is_complex_v<Scalar>) {
    const double re = uniform(rng, lo, hi);
    return {re, uniform(rng, lo, hi)};
  } else {
    return uniform(rng, lo, hi);
  }
}

/// Entries uniform in [-0.5, 0.5).
template <typename Scalar>
Mat<Scalar> random_matrix(Rng& rng, int rows, int cols) {
  Mat<Scalar> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = uniform_scalar<Scalar>(rng, -0.5, 0.5);
  return m;
}

/// Random element of GL(m): entries uniform in [-0.5, 0.5), redrawn until
/// invertible.
template <typename Scalar>
Mat<Scalar> random_gl(Rng& rng, int m) {
  for (;;) {
    auto g = random_matrix<Scalar>(rng, m, m);
    if (is_invertible(g)) return g;
  }
}

inline constexpr double kMaxGaugeCondition = 10.0;

/// As random_gl, additionally redrawn until the 2-norm condition number is
/// at most kMaxGaugeCondition. Used wherever a product of many inverses is
/// compared against exact identities.
template <typename Scalar>
Mat<Scalar> random_well_conditioned(Rng& rng, int m) {
  for (;;) {
    auto g = random_gl<Scalar>(rng, m);
    Eigen::JacobiSVD<Mat<Scalar>> svd(g);
    const auto& s = svd.singularValues();
    if (s(0) <= kMaxGaugeCondition * s(s.size() - 1)) return g;
  }
}

template <typename Scalar>
LinkField<Scalar> random_gl_links(const Lattice& lat, int m, Rng& rng) {
  return LinkField<Scalar>::generate(lat, m, [&](std::size_t, int) { return random_gl<Scalar>(rng, m); });
}

/// Unconstrained connection coefficients, entries uniform in [-0.5, 0.5).
template <typename Scalar>
ConnectionB<Scalar> random_connection(const Lattice& lat, int m, Rng& rng) {
  return ConnectionB<Scalar>(
      LinkField<Scalar>::generate(lat, m, [&](std::size_t, int) { return random_matrix<Scalar>(rng, m, m); }));
}

template <typename Scalar>
MatrixField<Scalar> random_field(const Lattice& lat, int rows, int cols, Rng& rng) {
  return MatrixField<Scalar>::generate(lat, rows, cols, [&](std::size_t) { return random_matrix<Scalar>(rng, rows, cols); });
}

template <typename Scalar>
GaugeTransform<Scalar> random_gauge(const Lattice& lat, int m, Rng& rng) {
  return GaugeTransform<Scalar>(
      MatrixField<Scalar>::generate(lat, m, m, [&](std::size_t) { return random_well_conditioned<Scalar>(rng, m); }));
}

/// U(1) links with phases uniform in (-pi, pi].
inline ConnectionU<Complex> random_u1(const Lattice& lat, Rng& rng) {
  return ConnectionU<Complex>(LinkField<Complex>::generate(lat, 1, [&](std::size_t, int) {
    Mat<Complex> v(1, 1);
    v(0, 0) = std::polar(1.0, std::numbers::pi - 2.0 * std::numbers::pi * uniform01(rng));
    return v;
  }));
}

/// Unit-modulus gauge phases, for U(1) gauge-invariance checks.
inline GaugeTransform<Complex> random_u1_gauge(const Lattice& lat, Rng& rng) {
  return GaugeTransform<Complex>(MatrixField<Complex>::generate(lat, 1, 1, [&](std::size_t) {
    Mat<Complex> v(1, 1);
    v(0, 0) = std::polar(1.0, std::numbers::pi - 2.0 * std::numbers::pi * uniform01(rng));
    return v;
  }));
}

/// U(1) configuration on a periodic L1 x L2 torus with uniform plaquette
/// phase 2 pi q / (L1 L2): U_2(x) = exp(2 pi i q x_1 / (L1 L2)), U_1 = 1
/// except on the boundary column x_1 = L1 - 1 where
/// U_1 = exp(-2 pi i q x_2 / L2). Total flux is exactly 2 pi q.
ConnectionU<Complex> constant_flux(const Lattice& lat, int q);

/// Lax pair generated from h(m, n) = I + 0.2 R with R uniform in
/// [-0.5, 0.5), so every transport is close to the identity (U = 1 + A with
/// small A).
template <typename Scalar>
LaxSystem<Scalar> random_pure_gauge_lax(int extent_x, int extent_t, int m, Rng& rng) {
  const Lattice grid({extent_x, extent_t}, Boundary::Open);
  const auto h = MatrixField<Scalar>::generate(grid, m, m, [&](std::size_t) {
    for (;;) {
      Mat<Scalar> v = Mat<Scalar>::Identity(m, m) + Scalar(0.2) * random_matrix<Scalar>(rng, m, m);
      if (is_invertible(v)) return v;
    }
  });
  return pure_gauge_lax(h);
}

}  // namespace dgauge
