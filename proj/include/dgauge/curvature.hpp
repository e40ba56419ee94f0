#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "dgauge/connection.hpp"

namespace dgauge {

/// Curvature components F_{mu nu}(x) stored for mu < nu only; the other
/// orderings follow from F_{nu mu} = -F_{mu nu}.
///
/// Components are unhalved: the two-form is F = sum_{mu<nu} F_{mu nu}
/// dx^mu ^ dx^nu = 1/2 sum_{mu,nu} F_{mu nu} dx^mu ^ dx^nu.
template <typename Scalar>
class CurvatureField {
 public:
  using Field = MatrixField<Scalar>;

  CurvatureField(Lattice lattice, int fiber_dim) : lattice_(std::move(lattice)), fiber_dim_(fiber_dim) {
    for (int mu = 0; mu < lattice_.dim(); ++mu)
      for (int nu = mu + 1; nu < lattice_.dim(); ++nu) comps_.emplace(std::pair{mu, nu}, Field(lattice_, fiber_dim));
  }

  const Lattice& lattice() const { return lattice_; }
  int fiber_dim() const { return fiber_dim_; }
  const std::map<std::pair<int, int>, Field>& components() const { return comps_; }

  /// F_{mu nu} with antisymmetric extension (zero on the diagonal).
  Field component(int mu, int nu) const {
    lattice_.check_axis(mu);
    lattice_.check_axis(nu);
    if (mu == nu) return Field(lattice_, fiber_dim_);
    if (mu < nu) return comps_.at({mu, nu});
    return -comps_.at({nu, mu});
  }
  Field& stored(int mu, int nu) { return comps_.at({mu, nu}); }
  const Field& stored(int mu, int nu) const { return comps_.at({mu, nu}); }

  /// The two-form sum_{mu<nu} F_{mu nu} dx^mu ^ dx^nu.
  DiscreteForm<Scalar> as_form() const {
    DiscreteForm<Scalar> f(lattice_, fiber_dim_, 2);
    for (const auto& [key, c] : comps_) f[(IndexSet{1} << key.first) | (IndexSet{1} << key.second)] = c;
    return f;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [k, c] : comps_) m = std::max(m, c.max_abs());
    return m;
  }

 private:
  Lattice lattice_;
  int fiber_dim_;
  std::map<std::pair<int, int>, Field> comps_;
};

template <typename Scalar>
double max_abs_difference(const CurvatureField<Scalar>& a, const CurvatureField<Scalar>& b) {
  if (a.lattice() != b.lattice() || a.fiber_dim() != b.fiber_dim()) throw ShapeError("curvature fields differ in shape");
  double m = 0.0;
  for (const auto& [k, c] : a.components()) m = std::max(m, max_abs_difference(c, b.components().at(k)));
  return m;
}

/// F_{mu nu}(x) = Delta_mu B_nu - Delta_nu B_mu + B_mu(x) B_nu(x+mu) - B_nu(x) B_mu(x+nu).
template <typename Scalar>
CurvatureField<Scalar> curvature(const ConnectionB<Scalar>& b) {
  const Lattice& lat = b.lattice();
  lat.require_periodic("curvature");
  CurvatureField<Scalar> f(lat, b.fiber_dim());
  for (int mu = 0; mu < lat.dim(); ++mu) {
    for (int nu = mu + 1; nu < lat.dim(); ++nu) {
      auto& c = f.stored(mu, nu);
      for (std::size_t x = 0; x < lat.volume(); ++x) {
        const std::size_t xm = lat.shift(x, mu, +1);
        const std::size_t xn = lat.shift(x, nu, +1);
        c[x] = (b(xm, nu) - b(x, nu)) - (b(xn, mu) - b(x, mu)) + b(x, mu) * b(xm, nu) - b(x, nu) * b(xn, mu);
      }
    }
  }
  return f;
}

/// The same curvature assembled at form level, d_D B + B ^ B.
template <typename Scalar>
DiscreteForm<Scalar> curvature_form(const ConnectionB<Scalar>& b) {
  const auto bf = b.as_form();
  return exterior_derivative(bf) + wedge(bf, bf);
}

/// Holonomy form G_{mu nu}(x) = U_mu(x) U_nu(x+mu) - U_nu(x) U_mu(x+nu).
/// Equal to curvature(from_transport(u)) identically.
template <typename Scalar>
CurvatureField<Scalar> curvature(const ConnectionU<Scalar>& u) {
  const Lattice& lat = u.lattice();
  lat.require_periodic("curvature");
  CurvatureField<Scalar> f(lat, u.fiber_dim());
  for (int mu = 0; mu < lat.dim(); ++mu) {
    for (int nu = mu + 1; nu < lat.dim(); ++nu) {
      auto& c = f.stored(mu, nu);
      for (std::size_t x = 0; x < lat.volume(); ++x)
        c[x] = u(x, mu) * u(lat.shift(x, mu, +1), nu) - u(x, nu) * u(lat.shift(x, nu, +1), mu);
    }
  }
  return f;
}

/// W_{mu nu}(x) = U_mu(x) U_nu(x+mu) U_mu(x+nu)^-1 U_nu(x)^-1.
template <typename Scalar>
Mat<Scalar> plaquette(const ConnectionU<Scalar>& u, std::size_t x, int mu, int nu) {
  const Lattice& lat = u.lattice();
  lat.check_axis(mu);
  lat.check_axis(nu);
  if (mu == nu) throw ConfigError("plaquette needs two different directions");
  return u(x, mu) * u(lat.shift(x, mu, +1), nu) * u.inverse(lat.shift(x, nu, +1), mu) * u.inverse(x, nu);
}

/// Flatness check. `flat` is decided by the plaquette deviation; the
/// commutator and holonomy columns are independent routes to the same answer.
struct FlatnessReport {
  bool flat = true;
  double tolerance = 0.0;
  double plaquette_deviation = 0.0;  // max |W - I|
  double holonomy_deviation = 0.0;   // max |path product around plaquette - I|
  double curvature_deviation = 0.0;  // max |G|
  double curvature_scale = 0.0;      // bound c with |G| <= c |W - I|
  bool flat_by_curvature = true;     // max |G| <= tolerance * curvature_scale
  bool flat_by_holonomy = true;
};

template <typename Scalar>
FlatnessReport is_flat(const ConnectionU<Scalar>& u, double tol) {
  const Lattice& lat = u.lattice();
  lat.require_periodic("is_flat");
  FlatnessReport r;
  r.tolerance = tol;
  const double m = u.fiber_dim();
  for (std::size_t x = 0; x < lat.volume(); ++x) {
    for (int mu = 0; mu < lat.dim(); ++mu) {
      for (int nu = mu + 1; nu < lat.dim(); ++nu) {
        const auto id = Mat<Scalar>::Identity(u.fiber_dim(), u.fiber_dim());
        r.plaquette_deviation = std::max(r.plaquette_deviation, max_abs(plaquette(u, x, mu, nu) - id));
        const auto loop = LatticePath::plaquette(lat.site(x), mu, nu);
        r.holonomy_deviation = std::max(r.holonomy_deviation, max_abs(path_ordered_product(loop, u) - id));
        const std::size_t xm = lat.shift(x, mu, +1);
        const std::size_t xn = lat.shift(x, nu, +1);
        const Mat<Scalar> back = u(x, nu) * u(xn, mu);
        r.curvature_deviation = std::max(r.curvature_deviation, max_abs(u(x, mu) * u(xm, nu) - back));
        r.curvature_scale = std::max(r.curvature_scale, m * max_abs(back));
      }
    }
  }
  r.flat = r.plaquette_deviation <= tol;
  r.flat_by_holonomy = r.holonomy_deviation <= tol;
  r.flat_by_curvature = r.curvature_deviation <= tol * std::max(r.curvature_scale, 1.0);
  return r;
}

/// Covariant exterior derivative of the curvature, D_D F = d_D F - F ^ B + B ^ F,
/// together with two component contractions per 3-subset {l < m < n}:
///   sum over permutations (l,m,n) with Levi-Civita sign of
///     Delta_l F_mn(x) - F_lm(x) B_n(x + s) + B_l(x) F_mn(x + e_l)
/// where s = e_m + e_n in `display` and s = e_l + e_m in `consistent`.
/// `consistent` is exactly twice the form residual; `display` is reported
/// as written and is not expected to vanish for general B.
template <typename Scalar>
struct BianchiReport {
  DiscreteForm<Scalar> form_residual;
  std::map<IndexSet, MatrixField<Scalar>> display;
  std::map<IndexSet, MatrixField<Scalar>> consistent;
  double form_max = 0.0;
  double display_max = 0.0;
  double consistent_max = 0.0;
  double scale = 0.0;  // max |B|
};

namespace detail {

/// All permutations of `axes` with their signs, starting from sorted order.
inline std::vector<std::pair<std::vector<int>, int>> signed_permutations(std::vector<int> axes) {
  std::sort(axes.begin(), axes.end());
  std::vector<std::pair<std::vector<int>, int>> out;
  do {
    out.emplace_back(axes, canonical_index(axes).second);
  } while (std::next_permutation(axes.begin(), axes.end()));
  return out;
}

}  // namespace detail

template <typename Scalar>
BianchiReport<Scalar> bianchi_residual(const ConnectionB<Scalar>& b) {
  const Lattice& lat = b.lattice();
  if (lat.dim() < 3) throw ConfigError("Bianchi residual needs at least three directions");
  lat.require_periodic("bianchi_residual");

  const auto f = curvature(b);
  const auto ff = f.as_form();
  const auto bf = b.as_form();
  BianchiReport<Scalar> r{exterior_derivative(ff) - wedge(ff, bf) + wedge(bf, ff), {}, {}};
  r.form_max = r.form_residual.max_abs();
  r.scale = b.links().max_abs();

  std::vector<MatrixField<Scalar>> bdir;
  for (int a = 0; a < lat.dim(); ++a) bdir.push_back(b.links().direction(a));

  for (const auto& [set, unused] : r.form_residual.components()) {
    MatrixField<Scalar> disp(lat, b.fiber_dim());
    MatrixField<Scalar> cons(lat, b.fiber_dim());
    for (const auto& [perm, sign] : detail::signed_permutations(index_axes(set))) {
      const int l = perm[0], m = perm[1], n = perm[2];
      const auto f_mn = f.component(m, n);
      const auto f_lm = f.component(l, m);
      const auto base = difference(f_mn, l) + bdir[l] * shift_field(f_mn, l, +1);
      const IndexSet mn = (IndexSet{1} << m) | (IndexSet{1} << n);
      const IndexSet lm = (IndexSet{1} << l) | (IndexSet{1} << m);
      auto d = base - f_lm * shift_field_by_mask(bdir[n], mn);
      auto c = base - f_lm * shift_field_by_mask(bdir[n], lm);
      d *= Scalar(sign);
      c *= Scalar(sign);
      disp += d;
      cons += c;
    }
    r.display_max = std::max(r.display_max, disp.max_abs());
    r.consistent_max = std::max(r.consistent_max, cons.max_abs());
    r.display.emplace(set, std::move(disp));
    r.consistent.emplace(set, std::move(cons));
  }
  return r;
}

/// Abelian Chern density on the 2k directions `axes` (increasing):
///   sum over permutations p of axes, sign(p) *
///     F_{p1 p2}(x) F_{p3 p4}(x + e_p1 + e_p2) ... F_{p(2k-1) p(2k)}(x + e_p1 + ... + e_p(2k-2)).
/// No 1/k! or 2^-k prefactor. Computed as 2^k times the top coefficient of
/// the k-fold wedge power of F.
template <typename Scalar>
MatrixField<Scalar> chern_density_field(const CurvatureField<Scalar>& f, int k, std::vector<int> axes = {}) {
  const Lattice& lat = f.lattice();
  if (f.fiber_dim() != 1) throw ConfigError("Chern density is implemented for Abelian (m = 1) curvature only");
  if (k < 1) throw ConfigError("Chern class order k must be positive");
  if (lat.dim() < 2 * k) throw ConfigError("Chern density of order k needs at least 2k directions");
  if (axes.empty()) {
    axes.resize(static_cast<std::size_t>(2 * k));
    std::iota(axes.begin(), axes.end(), 0);
  }
  if (static_cast<int>(axes.size()) != 2 * k) throw ConfigError("Chern density needs exactly 2k directions");
  for (int a : axes) lat.check_axis(a);
  auto [set, sign] = canonical_index(axes);
  if (sign == 0) throw ConfigError("Chern density directions must be distinct");

  const auto ff = f.as_form();
  auto power = ff;
  for (int i = 1; i < k; ++i) power = wedge(power, ff);
  auto out = power[set];
  out *= Scalar(sign * (1 << k));
  return out;
}

template <typename Scalar>
Scalar chern_density(const CurvatureField<Scalar>& f, int k, const Site& x, std::vector<int> axes = {}) {
  return chern_density_field(f, k, std::move(axes)).at(x)(0, 0);
}

}  // namespace dgauge
