#include "dgauge/abelian.hpp"

#include <cmath>
#include <numbers>

namespace dgauge {

namespace {

constexpr double kUnimodularTolerance = 1e-10;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

TopologicalCharge topological_charge(const ConnectionU<Complex>& u, int mu, int nu, Site slice_base) {
  const Lattice& lat = u.lattice();
  lat.require_periodic("topological_charge");
  if (u.fiber_dim() != 1) throw ConfigError("topological charge needs a U(1) (m = 1) configuration");
  lat.check_axis(mu);
  lat.check_axis(nu);
  if (mu == nu) throw ConfigError("topological charge needs two different directions");
  for (const auto& v : u.links().values())
    if (std::abs(std::abs(v(0, 0)) - 1.0) > kUnimodularTolerance)
      throw ConfigError("topological charge needs unimodular links, found |U| = " + std::to_string(std::abs(v(0, 0))));

  if (slice_base.empty()) slice_base.assign(static_cast<std::size_t>(lat.dim()), 0);
  const std::size_t origin = lat.index(lat.canonical(slice_base));

  // Sum in a fixed row-major order over the plane for reproducibility.
  double total = 0.0;
  std::size_t row = origin;
  for (int i = 0; i < lat.extent(mu); ++i) {
    std::size_t x = row;
    for (int j = 0; j < lat.extent(nu); ++j) {
      total += std::arg(plaquette(u, x, mu, nu)(0, 0));
      x = lat.shift(x, nu, +1);
    }
    row = lat.shift(row, mu, +1);
  }
  TopologicalCharge q;
  q.raw = total / kTwoPi;
  q.charge = std::lround(q.raw);
  q.residual = std::abs(q.raw - static_cast<double>(q.charge));
  return q;
}

SmoothPotential smooth_test_potential() {
  using std::cos;
  using std::sin;
  constexpr double pi = std::numbers::pi;
  SmoothPotential p;
  p.name = "smooth";
  p.potential = [](int axis, double x, double y) {
    if (axis == 0) return 0.3 * sin(kTwoPi * y) + 0.2 * cos(kTwoPi * (x + y));
    return 0.5 * sin(kTwoPi * x) * cos(kTwoPi * y) + 0.1 * cos(kTwoPi * x);
  };
  p.field_strength = [](double x, double y) {
    return pi * cos(kTwoPi * x) * cos(kTwoPi * y) - 0.2 * pi * sin(kTwoPi * x) - 0.6 * pi * cos(kTwoPi * y) +
           0.4 * pi * sin(kTwoPi * (x + y));
  };
  return p;
}

SmoothPotential constant_flux_potential(int q) {
  const double c = kTwoPi * q;
  SmoothPotential p;
  p.name = "constant-flux";
  p.potential = [c](int axis, double x, double) { return axis == 1 ? c * x : 0.0; };
  p.field_strength = [c](double, double) { return c; };
  p.transition = [c](int axis, double, double y) { return axis == 0 ? -c * y : 0.0; };
  return p;
}

ConnectionU<Complex> discretize(const SmoothPotential& pot, int extent) {
  if (extent < 2) throw ConfigError("continuum discretization needs L >= 2");
  const Lattice lat({extent, extent});
  const double a = 1.0 / extent;
  auto links = LinkField<Complex>::generate(lat, 1, [&](std::size_t x, int axis) {
    const double i = lat.coordinate(x, 0);
    const double j = lat.coordinate(x, 1);
    const double px = a * (i + (axis == 0 ? 0.5 : 0.0));
    const double py = a * (j + (axis == 1 ? 0.5 : 0.0));
    double phase = a * pot.potential(axis, px, py);
    if (pot.transition && lat.coordinate(x, axis) == extent - 1) phase += pot.transition(axis, px, py);
    Mat<Complex> v(1, 1);
    v(0, 0) = std::polar(1.0, phase);
    return v;
  });
  return ConnectionU<Complex>(std::move(links));
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = 0; k < x.size() && k < y.size(); ++k) {
    if (!(y[k] > 0.0) || !(x[k] > 0.0)) continue;
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = n * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

ContinuumScan continuum_scan(const SmoothPotential& pot, std::vector<int> extents) {
  if (!pot.potential || !pot.field_strength) throw ConfigError("potential needs both A and its analytic curl");
  std::sort(extents.begin(), extents.end());
  ContinuumScan scan;
  std::vector<double> spacing, im_err, re_err;
  for (int extent : extents) {
    const auto u = discretize(pot, extent);
    const Lattice& lat = u.lattice();
    ContinuumRow row;
    row.extent = extent;
    row.spacing = 1.0 / extent;
    const double a2 = row.spacing * row.spacing;
    for (std::size_t x = 0; x < lat.volume(); ++x) {
      const Complex w = plaquette(u, x, 0, 1)(0, 0);
      const double f = pot.field_strength(row.spacing * (lat.coordinate(x, 0) + 0.5),
                                          row.spacing * (lat.coordinate(x, 1) + 0.5));
      row.im_error = std::max(row.im_error, std::abs(w.imag() / a2 - f));
      row.re_error = std::max(row.re_error, std::abs((1.0 - w.real()) / (a2 * a2) - 0.5 * f * f));
      row.phase_error = std::max(row.phase_error, std::abs(std::arg(w) / a2 - f));
    }
    if (!scan.rows.empty() && !(row.re_error < scan.rows.back().re_error)) scan.re_monotone = false;
    scan.rows.push_back(row);
    spacing.push_back(row.spacing);
    im_err.push_back(row.im_error);
    re_err.push_back(row.re_error);
  }
  scan.im_slope = loglog_slope(spacing, im_err);
  scan.re_slope = loglog_slope(spacing, re_err);
  return scan;
}

}  // namespace dgauge
