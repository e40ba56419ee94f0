#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "dgauge/field.hpp"
#include "dgauge/forms.hpp"

namespace dgauge {

namespace detail {

inline std::string link_name(const Lattice& lat, std::size_t site, int axis) {
  std::ostringstream s;
  s << "link (";
  const Site x = lat.site(site);
  for (std::size_t a = 0; a < x.size(); ++a) s << (a ? "," : "") << x[a];
  s << ") direction " << axis + 1;
  return s.str();
}

inline std::string site_name(const Lattice& lat, std::size_t site) {
  std::ostringstream s;
  s << "site (";
  const Site x = lat.site(site);
  for (std::size_t a = 0; a < x.size(); ++a) s << (a ? "," : "") << x[a];
  s << ")";
  return s.str();
}

}  // namespace detail

/// Connection coefficients B_mu(x) = B(x, x + e_mu), one general m x m
/// matrix per link. Sections are row vectors acted on from the right.
template <typename Scalar>
class ConnectionB {
 public:
  using Matrix = Mat<Scalar>;

  explicit ConnectionB(LinkField<Scalar> links) : links_(std::move(links)) {}

  const LinkField<Scalar>& links() const { return links_; }
  const Lattice& lattice() const { return links_.lattice(); }
  int fiber_dim() const { return links_.fiber_dim(); }
  const Matrix& operator()(std::size_t site, int axis) const { return links_(site, axis); }

  /// B = sum_mu B_mu dx^mu.
  DiscreteForm<Scalar> as_form() const {
    std::vector<MatrixField<Scalar>> parts;
    for (int a = 0; a < lattice().dim(); ++a) parts.push_back(links_.direction(a));
    return DiscreteForm<Scalar>::one_form(parts);
  }

 private:
  LinkField<Scalar> links_;
};

/// Transport matrices U_mu(x) = U(x, x + e_mu). Every link is checked for
/// invertibility on construction and its inverse U(x + e_mu, x) is cached.
template <typename Scalar>
class ConnectionU {
 public:
  using Matrix = Mat<Scalar>;

  explicit ConnectionU(LinkField<Scalar> links) : links_(std::move(links)), inverses_(links_) {
    const Lattice& lat = links_.lattice();
    for (std::size_t i = 0; i < lat.volume(); ++i) {
      for (int a = 0; a < lat.dim(); ++a) {
        if (!lat.try_shift(i, a, +1)) {
          inverses_(i, a) = Matrix::Identity(fiber_dim(), fiber_dim());
          continue;
        }
        const Matrix& u = links_(i, a);
        if (!is_invertible(u)) throw SingularityError("transport is singular on " + detail::link_name(lat, i, a));
        inverses_(i, a) = dgauge::inverse<Scalar>(u);
      }
    }
  }

  const LinkField<Scalar>& links() const { return links_; }
  const Lattice& lattice() const { return links_.lattice(); }
  int fiber_dim() const { return links_.fiber_dim(); }
  const Matrix& operator()(std::size_t site, int axis) const { return links_(site, axis); }
  /// U(x + e_axis, x) = U_axis(x)^-1.
  const Matrix& inverse(std::size_t site, int axis) const { return inverses_(site, axis); }

 private:
  LinkField<Scalar> links_;
  LinkField<Scalar> inverses_;
};

/// Site-wise change of fiber basis s_a -> g(x)^b_a s_b with g(x) in GL(m).
template <typename Scalar>
class GaugeTransform {
 public:
  using Matrix = Mat<Scalar>;

  explicit GaugeTransform(MatrixField<Scalar> g) : g_(std::move(g)), g_inv_(g_) {
    if (!g_.square()) throw ShapeError("gauge transform values must be square");
    for (std::size_t i = 0; i < g_.size(); ++i) {
      if (!is_invertible(g_[i])) throw SingularityError("gauge element is singular at " + detail::site_name(g_.lattice(), i));
      g_inv_[i] = dgauge::inverse<Scalar>(g_[i]);
    }
  }

  const MatrixField<Scalar>& field() const { return g_; }
  const MatrixField<Scalar>& inverse_field() const { return g_inv_; }
  const Lattice& lattice() const { return g_.lattice(); }
  int fiber_dim() const { return g_.fiber_dim(); }
  const Matrix& operator[](std::size_t site) const { return g_[site]; }
  const Matrix& inverse(std::size_t site) const { return g_inv_[site]; }

 private:
  MatrixField<Scalar> g_;
  MatrixField<Scalar> g_inv_;
};

/// Pointwise product (outer * inner)(x); acting with it equals acting with
/// inner first, then outer.
template <typename Scalar>
GaugeTransform<Scalar> compose(const GaugeTransform<Scalar>& outer, const GaugeTransform<Scalar>& inner) {
  return GaugeTransform<Scalar>(outer.field() * inner.field());
}

/// A walk on the lattice: base site plus unit steps (axis, +-1).
struct LatticePath {
  struct Step {
    int axis;
    int sign;
    friend bool operator==(const Step&, const Step&) = default;
  };

  Site base;
  std::vector<Step> steps;

  /// Visited site indices, base first; throws BoundaryError when a step
  /// leaves an open axis.
  std::vector<std::size_t> sites(const Lattice& lat) const {
    std::vector<std::size_t> out;
    out.reserve(steps.size() + 1);
    out.push_back(lat.index(lat.canonical(base)));
    for (const auto& s : steps) {
      if (s.sign != 1 && s.sign != -1) throw ConfigError("path step sign must be +1 or -1");
      lat.check_axis(s.axis);
      out.push_back(lat.shift(out.back(), s.axis, s.sign));
    }
    return out;
  }
  std::size_t end(const Lattice& lat) const { return sites(lat).back(); }
  bool closed(const Lattice& lat) const {
    auto v = sites(lat);
    return v.front() == v.back();
  }

  /// Counter-clockwise boundary of the elementary square at x in the
  /// (mu, nu) plane: +mu, +nu, -mu, -nu.
  static LatticePath plaquette(Site x, int mu, int nu) {
    return LatticePath{std::move(x), {{mu, +1}, {nu, +1}, {mu, -1}, {nu, -1}}};
  }

  /// This path followed by `next`; next.base must be this path's end point.
  LatticePath then(const LatticePath& next, const Lattice& lat) const {
    if (lat.index(lat.canonical(next.base)) != end(lat)) throw ConfigError("paths do not join");
    LatticePath out = *this;
    out.steps.insert(out.steps.end(), next.steps.begin(), next.steps.end());
    return out;
  }
};

/// U = I + B on every link; throws SingularityError naming the first link
/// where I + B is not invertible.
template <typename Scalar>
ConnectionU<Scalar> to_transport(const ConnectionB<Scalar>& b) {
  LinkField<Scalar> u = b.links();
  const int m = b.fiber_dim();
  for (auto& v : u.values()) v += Mat<Scalar>::Identity(m, m);
  return ConnectionU<Scalar>(std::move(u));
}

/// B = U - I on every link.
template <typename Scalar>
ConnectionB<Scalar> from_transport(const ConnectionU<Scalar>& u) {
  LinkField<Scalar> b = u.links();
  const int m = u.fiber_dim();
  for (auto& v : b.values()) v -= Mat<Scalar>::Identity(m, m);
  return ConnectionB<Scalar>(std::move(b));
}

/// (D_mu a)(x) = Delta_mu a(x) - a(x) B_mu(x) for row sections a (k x m).
template <typename Scalar>
MatrixField<Scalar> covariant_derivative(const MatrixField<Scalar>& a, const ConnectionB<Scalar>& b, int axis) {
  if (a.lattice() != b.lattice()) throw ShapeError("section and connection live on different lattices");
  if (a.fiber_dim() != b.fiber_dim()) throw ShapeError("section fiber dimension differs from connection");
  const Lattice& lat = a.lattice();
  MatrixField<Scalar> out = difference(a, axis);
  for (std::size_t x = 0; x < lat.volume(); ++x) out[x].noalias() -= a[x] * b(x, axis);
  return out;
}

/// D_D a = sum_mu (D_mu a) dx^mu.
template <typename Scalar>
DiscreteForm<Scalar> covariant_exterior_derivative(const MatrixField<Scalar>& a, const ConnectionB<Scalar>& b) {
  std::vector<MatrixField<Scalar>> parts;
  for (int mu = 0; mu < a.lattice().dim(); ++mu) parts.push_back(covariant_derivative(a, b, mu));
  return DiscreteForm<Scalar>::one_form(parts);
}

/// Principal-bundle form: (D_mu h)(x) = h(x + e_mu) - h(x) U_mu(x).
template <typename Scalar>
MatrixField<Scalar> covariant_derivative(const MatrixField<Scalar>& h, const ConnectionU<Scalar>& u, int axis) {
  if (h.lattice() != u.lattice()) throw ShapeError("section and connection live on different lattices");
  if (h.fiber_dim() != u.fiber_dim()) throw ShapeError("section fiber dimension differs from connection");
  if (h.square())
    for (std::size_t x = 0; x < h.size(); ++x)
      if (!is_invertible(h[x])) throw SingularityError("group-valued section is singular at " + detail::site_name(h.lattice(), x));
  MatrixField<Scalar> out = shift_field(h, axis, +1);
  for (std::size_t x = 0; x < h.size(); ++x) out[x].noalias() -= h[x] * u(x, axis);
  return out;
}

namespace detail {
template <typename Scalar>
void require_gauge_compatible(const Lattice& lat, int m, const GaugeTransform<Scalar>& g) {
  if (lat != g.lattice()) throw ShapeError("gauge transform lives on a different lattice");
  if (m != g.fiber_dim()) throw ShapeError("gauge transform fiber dimension differs");
}
}  // namespace detail

/// B'_mu(x) = g(x) B_mu(x) g^-1(x + e_mu) + g(x) Delta_mu g^-1(x).
template <typename Scalar>
ConnectionB<Scalar> gauge_transform(const ConnectionB<Scalar>& b, const GaugeTransform<Scalar>& g) {
  const Lattice& lat = b.lattice();
  detail::require_gauge_compatible(lat, b.fiber_dim(), g);
  lat.require_periodic("gauge_transform");
  LinkField<Scalar> out(lat, b.fiber_dim());
  for (std::size_t x = 0; x < lat.volume(); ++x) {
    for (int mu = 0; mu < lat.dim(); ++mu) {
      const std::size_t xp = lat.shift(x, mu, +1);
      out(x, mu) = g[x] * b(x, mu) * g.inverse(xp) + g[x] * (g.inverse(xp) - g.inverse(x));
    }
  }
  return ConnectionB<Scalar>(std::move(out));
}

/// U'_mu(x) = g(x) U_mu(x) g^-1(x + e_mu).
template <typename Scalar>
ConnectionU<Scalar> gauge_transform(const ConnectionU<Scalar>& u, const GaugeTransform<Scalar>& g) {
  const Lattice& lat = u.lattice();
  detail::require_gauge_compatible(lat, u.fiber_dim(), g);
  lat.require_periodic("gauge_transform");
  LinkField<Scalar> out(lat, u.fiber_dim());
  for (std::size_t x = 0; x < lat.volume(); ++x)
    for (int mu = 0; mu < lat.dim(); ++mu) out(x, mu) = g[x] * u(x, mu) * g.inverse(lat.shift(x, mu, +1));
  return ConnectionU<Scalar>(std::move(out));
}

/// Section coefficients transform contragrediently, a'(x) = a(x) g^-1(x),
/// so that S = a^a s_a is unchanged.
template <typename Scalar>
MatrixField<Scalar> transform_section(const MatrixField<Scalar>& a, const GaugeTransform<Scalar>& g) {
  detail::require_gauge_compatible(a.lattice(), a.fiber_dim(), g);
  return a * g.inverse_field();
}

/// U_mu(x) = g^-1(x) g(x + e_mu); trivially flat.
template <typename Scalar>
ConnectionU<Scalar> pure_gauge(const GaugeTransform<Scalar>& g) {
  const Lattice& lat = g.lattice();
  lat.require_periodic("pure_gauge");
  LinkField<Scalar> out(lat, g.fiber_dim());
  for (std::size_t x = 0; x < lat.volume(); ++x)
    for (int mu = 0; mu < lat.dim(); ++mu) out(x, mu) = g.inverse(x) * g[lat.shift(x, mu, +1)];
  return ConnectionU<Scalar>(std::move(out));
}

/// Ordered product of link transports along the path: U(x, x+e) on forward
/// steps, U(x-e, x)^-1 on backward steps.
template <typename Scalar>
Mat<Scalar> path_ordered_product(const LatticePath& path, const ConnectionU<Scalar>& u) {
  const Lattice& lat = u.lattice();
  const auto sites = path.sites(lat);
  Mat<Scalar> prod = Mat<Scalar>::Identity(u.fiber_dim(), u.fiber_dim());
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    const auto& step = path.steps[k];
    if (step.sign > 0)
      prod = prod * u(sites[k], step.axis);
    else
      prod = prod * u.inverse(sites[k + 1], step.axis);
  }
  return prod;
}

/// a <- a U along each step; a is a row vector (or a stack of rows).
template <typename Scalar>
Mat<Scalar> parallel_transport(const Mat<Scalar>& a, const LatticePath& path, const ConnectionU<Scalar>& u) {
  if (a.cols() != u.fiber_dim()) throw ShapeError("vector length differs from fiber dimension");
  const Lattice& lat = u.lattice();
  const auto sites = path.sites(lat);
  Mat<Scalar> v = a;
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    const auto& step = path.steps[k];
    if (step.sign > 0)
      v = v * u(sites[k], step.axis);
    else
      v = v * u.inverse(sites[k + 1], step.axis);
  }
  return v;
}

}  // namespace dgauge
