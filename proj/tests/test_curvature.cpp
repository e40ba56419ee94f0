#include <numbers>

#include "doctest.h"
#include "dgauge/abelian.hpp"
#include "support.hpp"

using namespace dgauge;
using namespace dgauge::testing;

namespace {

constexpr double kPi = std::numbers::pi;

Mat<Complex> phase(double theta) {
  Mat<Complex> v(1, 1);
  v(0, 0) = std::polar(1.0, theta);
  return v;
}

// U_1 = 1, U_2(x) = exp(i theta x_1) with theta = 2 pi q / L.
ConnectionU<Complex> stripe_flux(int l, int q) {
  const Lattice lat({l, l});
  const double theta = 2.0 * kPi * q / l;
  return ConnectionU<Complex>(LinkField<Complex>::generate(lat, 1, [&](std::size_t x, int axis) {
    return axis == 0 ? phase(0.0) : phase(theta * lat.coordinate(x, 0));
  }));
}

// Max over all mu < nu of |F(b) - G(I + b)|, relative to the size of the inputs.
template <typename Scalar>
double equivalence_gap(const ConnectionB<Scalar>& b) {
  return max_abs_difference(curvature(b), curvature(to_transport(b)));
}

template <typename Scalar>
ConnectionU<Scalar> translate(const ConnectionU<Scalar>& u, const std::vector<int>& offset) {
  const Lattice& lat = u.lattice();
  return ConnectionU<Scalar>(
      LinkField<Scalar>::generate(lat, u.fiber_dim(), [&](std::size_t x, int a) { return u(neighbour(lat, x, offset), a); }));
}

}  // namespace

TEST_SUITE("curvature") {
  TEST_CASE("trivial connections have zero curvature") {
    const Lattice lat({3, 3, 3});
    CHECK(curvature(ConnectionB<double>(LinkField<double>(lat, 2))).max_abs() == 0.0);
    CHECK(curvature(ConnectionU<double>(LinkField<double>::identity(lat, 2))).max_abs() == 0.0);
  }

  TEST_CASE("constant Abelian B is flat") {
    const Lattice lat({3, 4});
    const auto b = LinkField<Complex>::generate(lat, 1, [](std::size_t, int a) {
      Mat<Complex> v(1, 1);
      v(0, 0) = Complex(0.3 + a, -0.2 * a);
      return v;
    });
    CHECK(curvature(ConnectionB<Complex>(b)).max_abs() <= kRoundoff);
  }

  TEST_CASE("pure gauge has zero curvature") {
    Rng rng(41);
    const Lattice lat({3, 3});
    const auto u = pure_gauge(random_gauge<double>(lat, 2, rng));
    CHECK(vanishes(curvature(from_transport(u)).max_abs(), 10.0));
    CHECK(vanishes(curvature(u).max_abs(), 10.0));
  }

  TEST_CASE("component formula against a direct site-by-site oracle") {
    Rng rng(42);
    const Lattice lat({3, 2, 3});
    const auto b = random_connection<Complex>(lat, 2, rng);
    const auto f = curvature(b);
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = 0; nu < 3; ++nu)
        for (std::size_t x = 0; x < lat.volume(); ++x) {
          const std::size_t xm = neighbour(lat, x, unit(3, mu));
          const std::size_t xn = neighbour(lat, x, unit(3, nu));
          const Mat<Complex> expect = (b(xm, nu) - b(x, nu)) - (b(xn, mu) - b(x, mu)) + b(x, mu) * b(xm, nu) - b(x, nu) * b(xn, mu);
          CHECK(max_abs(f.component(mu, nu)[x] - expect) <= kRoundoff);
        }
  }

  TEST_CASE("component formula agrees with d_D B + B ^ B") {
    Rng rng(43);
    for (const auto& ext : std::vector<std::vector<int>>{{3, 3}, {2, 3, 2}, {2, 2, 2, 2}}) {
      const Lattice lat(ext);
      const auto b = random_connection<double>(lat, 3, rng);
      CHECK(vanishes(max_abs_difference(curvature(b).as_form(), curvature_form(b)), 1.0));
    }
  }

  TEST_CASE("F from B equals G from U = I + B") {
    Rng rng(44);
    for (const auto& ext : std::vector<std::vector<int>>{{4, 4}, {3, 2, 4}, {4, 4, 4, 4}}) {
      const Lattice lat(ext);
      for (int m = 1; m <= 3; ++m) {
        CHECK(vanishes(equivalence_gap(random_connection<double>(lat, m, rng)), 1.0));
        CHECK(vanishes(equivalence_gap(random_connection<Complex>(lat, m, rng)), 1.0));
      }
    }
  }

  TEST_CASE("stripe flux: G_12 and W_12 in closed form") {
    for (int q : {1, 2, -1}) {
      const int l = 6;
      const double theta = 2.0 * kPi * q / l;
      const auto u = stripe_flux(l, q);
      const auto g = curvature(u).component(0, 1);
      const Lattice& lat = u.lattice();
      for (std::size_t x = 0; x < lat.volume(); ++x) {
        const Complex expect = std::polar(1.0, theta * lat.coordinate(x, 0)) * (std::polar(1.0, theta) - 1.0);
        CHECK(std::abs(g[x](0, 0) - expect) <= kRoundoff);
        CHECK(std::abs(plaquette(u, x, 0, 1)(0, 0) - std::polar(1.0, theta)) <= kRoundoff);
      }
    }
  }

  TEST_CASE("plaquette of the identity; orientation") {
    Rng rng(45);
    const Lattice lat({3, 3, 3});
    const ConnectionU<double> id(LinkField<double>::identity(lat, 2));
    CHECK(plaquette(id, 5, 0, 2).isIdentity(0.0));
    const ConnectionU<double> u(random_gl_links<double>(lat, 2, rng));
    CHECK(max_abs(plaquette(u, 4, 0, 1) * plaquette(u, 4, 1, 0) - Mat<double>::Identity(2, 2)) <= 1e-10);
    CHECK_THROWS_AS(plaquette(u, 0, 1, 1), ConfigError);
  }

  TEST_CASE("plaquette with inverses equals the adjoint form for unitary links") {
    Rng rng(46);
    const Lattice lat({3, 4});
    const ConnectionU<Complex> u(LinkField<Complex>::generate(lat, 2, [&](std::size_t, int) {
      Eigen::HouseholderQR<Mat<Complex>> qr(random_matrix<Complex>(rng, 2, 2));
      return Mat<Complex>(qr.householderQ());
    }));
    for (std::size_t x = 0; x < lat.volume(); ++x) {
      const std::size_t xm = lat.shift(x, 0, +1), xn = lat.shift(x, 1, +1);
      const Mat<Complex> adjoint = u(x, 0) * u(xm, 1) * u(xn, 0).adjoint() * u(x, 1).adjoint();
      CHECK(max_abs(plaquette(u, x, 0, 1) - adjoint) <= 1e-10);
    }
  }

  TEST_CASE("plaquette trace is gauge invariant") {
    Rng rng(47);
    const Lattice lat({3, 3, 2});
    const ConnectionU<Complex> u(random_gl_links<Complex>(lat, 3, rng));
    const auto v = gauge_transform(u, random_gauge<Complex>(lat, 3, rng));
    for (std::size_t x = 0; x < lat.volume(); ++x)
      for (int mu = 0; mu < 3; ++mu)
        for (int nu = mu + 1; nu < 3; ++nu) {
          const Complex t = plaquette(u, x, mu, nu).trace();
          CHECK(std::abs(plaquette(v, x, mu, nu).trace() - t) <= 1e-10 * (1.0 + std::abs(t)));
        }
  }

  TEST_CASE("curvature is gauge covariant") {
    Rng rng(48);
    for (const auto& ext : std::vector<std::vector<int>>{{3, 3}, {3, 2, 3}}) {
      const Lattice lat(ext);
      for (int trial = 0; trial < 4; ++trial) {
        const auto b = random_connection<Complex>(lat, 2, rng);
        const auto g = random_gauge<Complex>(lat, 2, rng);
        const auto f = curvature(b);
        const auto f2 = curvature(gauge_transform(b, g));
        for (int mu = 0; mu < lat.dim(); ++mu)
          for (int nu = mu + 1; nu < lat.dim(); ++nu) {
            const auto rhs = g.field() * f.component(mu, nu) *
                             shift_field_by_mask(g.inverse_field(), (IndexSet{1} << mu) | (IndexSet{1} << nu));
            CHECK(vanishes(max_abs_difference(f2.component(mu, nu), rhs), rhs.max_abs()));
          }
      }
    }
  }

  TEST_CASE("flatness: three criteria agree") {
    Rng rng(49);
    const Lattice lat({4, 3, 3});
    std::vector<ConnectionU<Complex>> configs{
        ConnectionU<Complex>(LinkField<Complex>::identity(lat, 2)),
        pure_gauge(random_gauge<Complex>(lat, 2, rng)),
        ConnectionU<Complex>(random_gl_links<Complex>(lat, 2, rng)),
    };
    configs.push_back(constant_flux(Lattice({5, 5}), 1));
    configs.push_back(random_u1(lat, rng));
    for (const auto& u : configs) {
      const auto r = is_flat(u, 1e-10);
      CHECK(r.flat == r.flat_by_holonomy);
      CHECK(r.flat == r.flat_by_curvature);
      CHECK(r.holonomy_deviation == doctest::Approx(r.plaquette_deviation).epsilon(1e-12));
    }
    CHECK(is_flat(configs[0], 0.0).plaquette_deviation == 0.0);
    CHECK(is_flat(configs[1], 1e-12).flat);
    CHECK_FALSE(is_flat(configs[2], 1e-10).flat);
  }

  TEST_CASE("constant flux is not flat; deviation is |exp(i theta) - 1|") {
    for (int l : {4, 8}) {
      for (int q : {-2, 1, 3}) {
        const auto r = is_flat(constant_flux(Lattice({l, l}), q), 1e-10);
        CHECK_FALSE(r.flat);
        const double expect = std::abs(std::polar(1.0, 2.0 * kPi * q / (l * l)) - 1.0);
        CHECK(std::abs(r.plaquette_deviation - expect) <= 1e-12);
      }
    }
  }

  TEST_CASE("constant flux has uniform plaquette phase and total flux 2 pi q") {
    const int l1 = 6, l2 = 4, q = 2;
    const auto u = constant_flux(Lattice({l1, l2}), q);
    double total = 0.0;
    for (std::size_t x = 0; x < u.lattice().volume(); ++x) {
      const double a = std::arg(plaquette(u, x, 0, 1)(0, 0));
      CHECK(a == doctest::Approx(2.0 * kPi * q / (l1 * l2)).epsilon(1e-12));
      total += a;
    }
    CHECK(std::abs(total - 2.0 * kPi * q) <= 1e-10);
  }

  TEST_CASE("Bianchi: zero connection and dimension check") {
    const auto r = bianchi_residual(ConnectionB<double>(LinkField<double>(Lattice({3, 3, 3}), 2)));
    CHECK(r.form_max == 0.0);
    CHECK(r.display_max == 0.0);
    CHECK_THROWS_AS(bianchi_residual(ConnectionB<double>(LinkField<double>(Lattice({3, 3}), 2))), ConfigError);
  }

  TEST_CASE("Bianchi: form-level residual vanishes for random matrix B") {
    Rng rng(50);
    for (const auto& ext : std::vector<std::vector<int>>{{3, 3, 3}, {2, 3, 2, 2}}) {
      for (int m : {1, 2, 3}) {
        const auto b = random_connection<Complex>(Lattice(ext), m, rng);
        const auto r = bianchi_residual(b);
        CHECK(vanishes(r.form_max, r.scale));
        CHECK(r.form_residual.degree() == 3);
      }
    }
  }

  TEST_CASE("Bianchi: the consistently shifted epsilon sum is twice the form coefficient") {
    Rng rng(51);
    const auto b = random_connection<double>(Lattice({3, 3, 3}), 2, rng);
    const auto r = bianchi_residual(b);
    for (const auto& [set, c] : r.consistent) CHECK(vanishes(max_abs_difference(c, 2.0 * r.form_residual[set]), 1.0));
    CHECK(vanishes(r.consistent_max, r.scale));
  }

  TEST_CASE("Bianchi: Abelian linear part vanishes since differences commute") {
    Rng rng(52);
    const Lattice lat({3, 4, 3});
    const auto b = random_connection<double>(lat, 1, rng);
    MatrixField<double> total(lat, 1);
    for (const auto& [perm, sign] : detail::signed_permutations({0, 1, 2})) {
      const int l = perm[0], m = perm[1], n = perm[2];
      const auto lin = difference(b.links().direction(n), m) - difference(b.links().direction(m), n);
      total += double(sign) * difference(lin, l);
    }
    CHECK(total.max_abs() <= kRoundoff);
  }

  TEST_CASE("Chern density k = 1 in 2D is 2 F_12") {
    Rng rng(53);
    const Lattice lat({4, 3});
    const auto f = curvature(random_connection<Complex>(lat, 1, rng));
    const auto c = chern_density_field(f, 1);
    CHECK(max_abs_difference(c, 2.0 * f.component(0, 1)) <= kRoundoff);
    CHECK(chern_density(f, 1, {2, 1}) == 2.0 * f.component(0, 1).at({2, 1})(0, 0));
    CHECK(chern_density_field(CurvatureField<Complex>(lat, 1), 1).max_abs() == 0.0);
  }

  TEST_CASE("Chern density k = 2 against the permutation-sum oracle") {
    Rng rng(54);
    for (const auto& ext : std::vector<std::vector<int>>{{2, 2, 2, 2}, {3, 2, 3, 2}}) {
      const Lattice lat(ext);
      const auto f = curvature(random_connection<Complex>(lat, 1, rng));
      const auto c = chern_density_field(f, 2);
      for (std::size_t x = 0; x < lat.volume(); ++x) {
        Complex expect = 0.0;
        std::vector<int> p{0, 1, 2, 3};
        do {
          int inversions = 0;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
          const double sign = inversions % 2 ? -1.0 : 1.0;
          const std::size_t y = neighbour(lat, x, add(unit(4, p[0]), unit(4, p[1])));
          expect += sign * f.component(p[0], p[1])[x](0, 0) * f.component(p[2], p[3])[y](0, 0);
        } while (std::next_permutation(p.begin(), p.end()));
        CHECK(std::abs(c[x](0, 0) - expect) <= kRoundoff);
      }
    }
  }

  TEST_CASE("Chern density preconditions") {
    const Lattice lat({3, 3, 3});
    CHECK_THROWS_AS(chern_density_field(CurvatureField<double>(lat, 2), 1), ConfigError);
    CHECK_THROWS_AS(chern_density_field(CurvatureField<double>(lat, 1), 2), ConfigError);
    CHECK_THROWS_AS(chern_density_field(CurvatureField<double>(lat, 1), 1, {1, 1}), ConfigError);
  }
}

TEST_SUITE("abelian") {
  TEST_CASE("charge of the identity configuration is zero") {
    const auto q = topological_charge(ConnectionU<Complex>(LinkField<Complex>::identity(Lattice({5, 5}), 1)));
    CHECK(q.charge == 0);
    CHECK(q.residual == 0.0);
  }

  TEST_CASE("constant flux carries charge q") {
    for (int l : {4, 8, 16})
      for (int q = -3; q <= 3; ++q) {
        const auto t = topological_charge(constant_flux(Lattice({l, l}), q));
        CHECK(t.charge == q);
        CHECK(t.residual <= 1e-10);
      }
  }

  TEST_CASE("charge is gauge and translation invariant") {
    Rng rng(61);
    const Lattice lat({8, 8});
    for (const auto& u : {constant_flux(lat, 2), random_u1(lat, rng)}) {
      const auto q = topological_charge(u);
      CHECK(q.residual <= 1e-10);
      for (int trial = 0; trial < 5; ++trial) {
        const auto t = topological_charge(gauge_transform(u, random_u1_gauge(lat, rng)));
        CHECK(t.charge == q.charge);
        CHECK(t.residual <= 1e-10);
      }
      const auto s = topological_charge(translate(u, {3, 5}));
      CHECK(s.charge == q.charge);
    }
  }

  TEST_CASE("charge preconditions") {
    const Lattice lat({3, 3});
    CHECK_THROWS_AS(topological_charge(ConnectionU<Complex>(LinkField<Complex>::identity(lat, 2))), ConfigError);
    auto links = LinkField<Complex>::identity(lat, 1);
    links(0, 0)(0, 0) = 1.5;
    CHECK_THROWS_AS(topological_charge(ConnectionU<Complex>(links)), ConfigError);
  }

  TEST_CASE("charge on a slice of a 3D lattice") {
    const Lattice lat({4, 4, 3});
    const auto flux = constant_flux(Lattice({4, 4}), 1);
    const ConnectionU<Complex> u(LinkField<Complex>::generate(lat, 1, [&](std::size_t x, int a) {
      if (a == 2) return phase(0.0);
      return flux(flux.lattice().index({lat.coordinate(x, 0), lat.coordinate(x, 1)}), a);
    }));
    for (int z = 0; z < 3; ++z) CHECK(topological_charge(u, 0, 1, {0, 0, z}).charge == 1);
    CHECK(topological_charge(u, 0, 2).charge == 0);
  }

  TEST_CASE("analytic field strength matches finite differences of the potential") {
    const auto p = smooth_test_potential();
    const double h = 1e-5;
    for (double x : {0.1, 0.37, 0.8})
      for (double y : {0.05, 0.5, 0.91}) {
        const double d2 = (p.potential(1, x + h, y) - p.potential(1, x - h, y)) / (2 * h);
        const double d1 = (p.potential(0, x, y + h) - p.potential(0, x, y - h)) / (2 * h);
        CHECK(p.field_strength(x, y) == doctest::Approx(d2 - d1).epsilon(1e-8));
      }
  }

  TEST_CASE("continuum scan: zero potential") {
    SmoothPotential zero{"zero", [](int, double, double) { return 0.0; }, [](double, double) { return 0.0; }, {}};
    const auto s = continuum_scan(zero, {4, 8});
    for (const auto& r : s.rows) {
      CHECK(r.im_error == 0.0);
      CHECK(r.re_error == 0.0);
    }
  }

  TEST_CASE("continuum scan: constant flux plaquette phase is exact") {
    for (int q : {1, -2}) {
      const auto s = continuum_scan(constant_flux_potential(q), {8, 16, 32, 64});
      for (const auto& r : s.rows) CHECK(r.phase_error <= 1e-10);
      const auto t = topological_charge(discretize(constant_flux_potential(q), 8));
      CHECK(t.charge == q);
    }
  }

  TEST_CASE("continuum scan: smooth potential converges at second order") {
    const auto s = continuum_scan(smooth_test_potential(), {8, 16, 32, 64});
    REQUIRE(s.rows.size() == 4);
    CHECK(s.im_slope >= 1.8);
    CHECK(s.re_monotone);
    for (std::size_t i = 1; i < s.rows.size(); ++i) CHECK(s.rows[i].im_error < s.rows[i - 1].im_error);
  }

  TEST_CASE("log-log slope") {
    CHECK(loglog_slope({1, 2, 4}, {1, 4, 16}) == doctest::Approx(2.0));
    CHECK(loglog_slope({1}, {1}) == 0.0);
  }
}
