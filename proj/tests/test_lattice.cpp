#include "doctest.h"
#include "support.hpp"

using namespace dgauge;
using namespace dgauge::testing;

TEST_SUITE("lattice") {
  TEST_CASE("sites are numbered lexicographically with the last coordinate fastest") {
    const Lattice lat({2, 3});
    CHECK(lat.volume() == 6);
    CHECK(lat.index({0, 1}) == 1);
    CHECK(lat.index({1, 0}) == 3);
    for (std::size_t i = 0; i < lat.volume(); ++i) CHECK(lat.index(lat.site(i)) == i);
  }

  TEST_CASE("invalid lattices are rejected") {
    CHECK_THROWS_AS(Lattice(std::vector<int>{}), ShapeError);
    CHECK_THROWS_AS(Lattice({3, 0}), ShapeError);
    CHECK_THROWS_AS(Lattice({3, 3}, std::vector<Boundary>{Boundary::Open}), ShapeError);
  }

  TEST_CASE("canonical form reduces periodic coordinates only") {
    const Lattice lat({4, 3}, std::vector<Boundary>{Boundary::Periodic, Boundary::Open});
    CHECK(lat.canonical({5, 2}) == Site{1, 2});
    CHECK(lat.canonical({-1, 2}) == Site{3, 2});
    CHECK(lat.canonical({0, 7}) == Site{0, 7});
  }

  TEST_CASE("periodic wrap") {
    const Lattice lat({4});
    CHECK(lat.shift(Site{3}, 0, +1) == Site{0});
    CHECK(lat.shift(Site{0}, 0, -1) == Site{3});
  }

  TEST_CASE("shift forward then backward is the identity") {
    const Lattice lat({3, 4, 2});
    for (std::size_t i = 0; i < lat.volume(); ++i)
      for (int a = 0; a < 3; ++a) {
        CHECK(lat.shift(lat.shift(i, a, +1), a, -1) == i);
        CHECK(lat.shift(lat.shift(i, a, -1), a, +1) == i);
      }
  }

  TEST_CASE("shifting off an open axis is a boundary error") {
    const Lattice lat({3, 3}, Boundary::Open);
    CHECK_THROWS_AS(lat.shift(Site{2, 0}, 0, +1), BoundaryError);
    CHECK_THROWS_AS(lat.shift(Site{0, 0}, 1, -1), BoundaryError);
    CHECK(lat.shift(Site{1, 0}, 0, +1) == Site{2, 0});
    CHECK_FALSE(lat.try_shift(lat.index({2, 2}), 1, +1).has_value());
  }

  TEST_CASE("bad direction") {
    const Lattice lat({3, 3});
    CHECK_THROWS_AS(lat.shift(Site{0, 0}, 2, +1), ShapeError);
    CHECK_THROWS_AS(lat.shift(Site{0, 0}, 0, 2), ShapeError);
  }
}

TEST_SUITE("fields") {
  TEST_CASE("shift of a constant field is the same constant") {
    const Lattice lat({3, 4});
    Mat<double> c(2, 2);
    c << 1, 2, 3, 4;
    const auto f = MatrixField<double>::constant(lat, c);
    for (int a = 0; a < 2; ++a) CHECK(max_abs_difference(shift_field(f, a, +1), f) == 0.0);
  }

  TEST_CASE("shift rotates a 1D scalar field") {
    const Lattice lat({4});
    MatrixField<double> f(lat, 1);
    const double vals[] = {10, 20, 30, 40};
    for (std::size_t i = 0; i < 4; ++i) f[i](0, 0) = vals[i];
    const auto s = shift_field(f, 0, +1);
    CHECK(s[0](0, 0) == 20);
    CHECK(s[1](0, 0) == 30);
    CHECK(s[2](0, 0) == 40);
    CHECK(s[3](0, 0) == 10);
  }

  TEST_CASE("shift forward then backward restores a random field") {
    Rng rng(11);
    const Lattice lat({3, 2, 4});
    const auto f = random_field<Complex>(lat, 2, 2, rng);
    for (int a = 0; a < 3; ++a) CHECK(max_abs_difference(shift_field(shift_field(f, a, +1), a, -1), f) == 0.0);
  }

  TEST_CASE("shift is an algebra homomorphism") {
    Rng rng(12);
    const Lattice lat({3, 3});
    const auto f = random_field<double>(lat, 3, 3, rng);
    const auto g = random_field<double>(lat, 3, 3, rng);
    for (int a = 0; a < 2; ++a)
      CHECK(max_abs_difference(shift_field(f * g, a, +1), shift_field(f, a, +1) * shift_field(g, a, +1)) == 0.0);
  }

  TEST_CASE("difference of a constant vanishes") {
    const auto f = MatrixField<double>::identity(Lattice({3, 3}), 2);
    CHECK(difference(f, 0).max_abs() == 0.0);
    CHECK(difference(f, 1).max_abs() == 0.0);
  }

  TEST_CASE("difference on a two-site ring") {
    MatrixField<double> f(Lattice({2}), 1);
    f[0](0, 0) = 1;
    f[1](0, 0) = 2;
    const auto d = difference(f, 0);
    CHECK(d[0](0, 0) == 1);
    CHECK(d[1](0, 0) == -1);
  }

  TEST_CASE("difference equals shift minus identity, entrywise exact") {
    Rng rng(13);
    const Lattice lat({4, 3});
    const auto f = random_field<Complex>(lat, 2, 2, rng);
    for (int a = 0; a < 2; ++a) CHECK(max_abs_difference(difference(f, a), shift_field(f, a, +1) - f) == 0.0);
  }

  TEST_CASE("deformed Leibniz rule, checked against site-by-site enumeration") {
    Rng rng(14);
    const Lattice lat({3, 4});
    const auto f = random_field<Complex>(lat, 2, 2, rng);
    const auto g = random_field<Complex>(lat, 2, 2, rng);
    for (int mu = 0; mu < 2; ++mu) {
      const auto lhs = difference(f * g, mu);
      double worst = 0.0;
      for (std::size_t x = 0; x < lat.volume(); ++x) {
        const std::size_t xp = neighbour(lat, x, unit(2, mu));
        const Mat<Complex> expect = (f[xp] - f[x]) * g[xp] + f[x] * (g[xp] - g[x]);
        worst = std::max(worst, max_abs(lhs[x] - expect));
      }
      CHECK(vanishes(worst, 1.0));
      // Operator form of the same rule.
      const auto rhs = difference(f, mu) * shift_field(g, mu, +1) + f * difference(g, mu);
      CHECK(vanishes(max_abs_difference(lhs, rhs), 1.0));
    }
  }

  TEST_CASE("differences commute on lattices up to 4^4") {
    Rng rng(15);
    for (const auto& ext : std::vector<std::vector<int>>{{4}, {2, 3}, {3, 3, 2}, {4, 4, 4, 4}}) {
      const Lattice lat(ext);
      const auto f = random_field<double>(lat, 2, 2, rng);
      for (int mu = 0; mu < lat.dim(); ++mu)
        for (int nu = 0; nu < lat.dim(); ++nu)
          CHECK(vanishes(max_abs_difference(difference(difference(f, mu), nu), difference(difference(f, nu), mu)), 1.0));
    }
  }

  TEST_CASE("differences telescope to zero on a periodic lattice") {
    Rng rng(16);
    const Lattice lat({4, 3, 2});
    const auto f = random_field<Complex>(lat, 3, 3, rng);
    for (int a = 0; a < 3; ++a) {
      Mat<Complex> total = Mat<Complex>::Zero(3, 3);
      for (const auto& v : difference(f, a)) total += v;
      CHECK(max_abs(total) <= kRoundoff);
    }
  }

  TEST_CASE("calculus operations refuse open lattices") {
    const MatrixField<double> f(Lattice({3, 3}, Boundary::Open), 1);
    CHECK_THROWS_AS(shift_field(f, 0, +1), BoundaryError);
    CHECK_THROWS_AS(difference(f, 1), BoundaryError);
  }

  TEST_CASE("pointwise product checks shapes") {
    const MatrixField<double> f(Lattice({3}), 2);
    const MatrixField<double> g(Lattice({4}), 2);
    const MatrixField<double> h(Lattice({3}), 3);
    CHECK_THROWS_AS(f * g, ShapeError);
    CHECK_THROWS_AS(f * h, ShapeError);
    CHECK_THROWS_AS(f + h, ShapeError);
  }

  TEST_CASE("link fields are stored site-major then by direction") {
    const Lattice lat({2, 2});
    auto u = LinkField<double>::generate(lat, 1, [](std::size_t x, int a) {
      Mat<double> v(1, 1);
      v(0, 0) = 10.0 * static_cast<double>(x) + a;
      return v;
    });
    CHECK(u.values()[5](0, 0) == 21.0);  // site 2, direction 2
    CHECK(u.direction(1)[3](0, 0) == 31.0);
  }
}
