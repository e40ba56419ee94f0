#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dgauge/curvature.hpp"

namespace dgauge {

/// Topological charge of a U(1) configuration in one (mu, nu) plane:
/// Q = (1/2pi) sum_x arg W_{mu nu}(x), arg in (-pi, pi].
struct TopologicalCharge {
  long charge = 0;        // nearest integer
  double raw = 0.0;       // the unrounded sum / 2pi
  double residual = 0.0;  // |raw - charge|
};

/// Links must satisfy ||U| - 1| <= 1e-10. On lattices with more than two
/// directions the sum runs over the (mu, nu) plane through `slice_base`
/// (default: the origin).
TopologicalCharge topological_charge(const ConnectionU<Complex>& u, int mu = 0, int nu = 1, Site slice_base = {});

/// A smooth U(1) potential on the unit 2-torus, used for continuum-limit
/// scans. Coordinates are physical, in [0, 1).
struct SmoothPotential {
  std::string name;
  /// A_axis(x1, x2).
  std::function<double(int axis, double x1, double x2)> potential;
  /// Analytic F_12 = dA_2/dx1 - dA_1/dx2.
  std::function<double(double x1, double x2)> field_strength;
  /// Optional extra phase on links that wrap around the torus along `axis`,
  /// evaluated at the physical midpoint of the link. Needed for potentials
  /// that are only periodic up to a gauge transformation.
  std::function<double(int axis, double x1, double x2)> transition;
};

/// A generic non-constant periodic potential with closed-form curl.
SmoothPotential smooth_test_potential();
/// A_1 = 0, A_2 = 2 pi q x1 with the boundary transition that makes the flux
/// exactly 2 pi q; F_12 = 2 pi q everywhere.
SmoothPotential constant_flux_potential(int q);

/// U_mu(x) = exp(i a A_mu(a (x + e_mu / 2))) on an L x L periodic lattice
/// with a = 1/L.
ConnectionU<Complex> discretize(const SmoothPotential& a, int extent);

struct ContinuumRow {
  int extent = 0;
  double spacing = 0.0;
  double im_error = 0.0;     // max |Im W / a^2 - F|
  double re_error = 0.0;     // max |Re(1 - W) / a^4 - F^2 / 2|
  double phase_error = 0.0;  // max |arg W / a^2 - F|
};

struct ContinuumScan {
  std::vector<ContinuumRow> rows;
  /// Least-squares slopes of log(error) against log(a).
  double im_slope = 0.0;
  double re_slope = 0.0;
  /// Re errors strictly decrease as L grows (rows sorted by L).
  bool re_monotone = true;
};

/// F is evaluated at plaquette centres a (x + (e_1 + e_2) / 2).
ContinuumScan continuum_scan(const SmoothPotential& a, std::vector<int> extents);

/// Least-squares slope of log(y) against log(x); entries with y <= 0 are
/// skipped. Returns 0 with fewer than two usable points.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dgauge
