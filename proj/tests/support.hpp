#pragma once

#include <vector>

#include "dgauge/curvature.hpp"
#include "dgauge/random.hpp"

namespace dgauge::testing {

// Identities hold exactly; only rounding is tolerated.
inline constexpr double kRoundoff = 1e-12;

inline bool vanishes(double residual, double scale) { return residual <= kRoundoff * (1.0 + scale); }

inline Lattice periodic(std::vector<int> extents) { return Lattice(std::move(extents)); }

// A random DiscreteForm with entries uniform in [-0.5, 0.5).
template <typename Scalar>
DiscreteForm<Scalar> random_form(const Lattice& lat, int m, int degree, Rng& rng) {
  DiscreteForm<Scalar> w(lat, m, degree);
  for (auto& [set, f] : w.components()) w[set] = random_field<Scalar>(lat, m, m, rng);
  return w;
}

// Neighbour index computed from raw coordinates, independent of Lattice::shift.
inline std::size_t neighbour(const Lattice& lat, std::size_t x, const std::vector<int>& offset) {
  Site s = lat.site(x);
  for (std::size_t a = 0; a < s.size(); ++a) {
    const int l = lat.extent(static_cast<int>(a));
    s[a] = ((s[a] + offset[a]) % l + l) % l;
  }
  std::size_t idx = 0;
  for (std::size_t a = 0; a < s.size(); ++a) idx = idx * static_cast<std::size_t>(lat.extent(static_cast<int>(a))) + static_cast<std::size_t>(s[a]);
  return idx;
}

inline std::vector<int> unit(int dim, int axis, int sign = 1) {
  std::vector<int> v(static_cast<std::size_t>(dim), 0);
  v[static_cast<std::size_t>(axis)] = sign;
  return v;
}

inline std::vector<int> add(std::vector<int> a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace dgauge::testing
