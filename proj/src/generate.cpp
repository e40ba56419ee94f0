#include "dgauge/generate.hpp"

#include <array>
#include <numbers>

#include "dgauge/random.hpp"

namespace dgauge {

namespace {

constexpr std::array<std::pair<GeneratorKind, std::string_view>, 6> kNames{{
    {GeneratorKind::RandomGL, "random-gl"},
    {GeneratorKind::RandomU1, "random-u1"},
    {GeneratorKind::PureGauge, "pure-gauge"},
    {GeneratorKind::ConstantFlux, "constant-flux"},
    {GeneratorKind::LaxPureGauge, "lax-pure-gauge"},
    {GeneratorKind::RandomGauge, "random-gauge"},
}};

template <typename Scalar>
AnyField generate_typed(const GenerateOptions& o, const Lattice& lat, Rng& rng) {
  switch (o.kind) {
    case GeneratorKind::RandomGL:
      return random_gl_links<Scalar>(lat, o.fiber_dim, rng);
    case GeneratorKind::PureGauge:
      return pure_gauge(random_gauge<Scalar>(lat, o.fiber_dim, rng)).links();
    case GeneratorKind::RandomGauge:
      return random_gauge<Scalar>(lat, o.fiber_dim, rng).field();
    case GeneratorKind::LaxPureGauge:
      return random_pure_gauge_lax<Scalar>(o.extents[0], o.extents[1], o.fiber_dim, rng);
    default:
      break;
  }
  throw ConfigError("generator " + to_string(o.kind) + " is not available for this scalar kind");
}

}  // namespace

std::string to_string(GeneratorKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return std::string(name);
  return "?";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) {
  for (const auto& [kind, n] : kNames)
    if (n == name) return kind;
  return std::nullopt;
}

ConnectionU<Complex> constant_flux(const Lattice& lat, int q) {
  if (lat.dim() != 2 || !lat.periodic()) throw ConfigError("constant-flux needs a two-dimensional periodic lattice");
  const int l1 = lat.extent(0), l2 = lat.extent(1);
  const double two_pi_q = 2.0 * std::numbers::pi * q;
  return ConnectionU<Complex>(LinkField<Complex>::generate(lat, 1, [&](std::size_t x, int axis) {
    const int x1 = lat.coordinate(x, 0), x2 = lat.coordinate(x, 1);
    double phase = 0.0;
    if (axis == 1)
      phase = two_pi_q * x1 / (static_cast<double>(l1) * l2);
    else if (x1 == l1 - 1)
      phase = -two_pi_q * x2 / l2;
    Mat<Complex> v(1, 1);
    v(0, 0) = std::polar(1.0, phase);
    return v;
  }));
}

Config generate(const GenerateOptions& o) {
  if (o.extents.empty()) throw ConfigError("generator needs lattice extents");
  if (o.fiber_dim < 1) throw ConfigError("fiber dimension must be positive");
  Rng rng(o.seed);
  Config cfg{MatrixField<double>(Lattice({1}), 1), Provenance{to_string(o.kind), kRngName, o.seed}};

  switch (o.kind) {
    case GeneratorKind::RandomU1:
      if (o.fiber_dim != 1 || o.scalar != ScalarKind::Complex)
        throw ConfigError("random-u1 needs m = 1 and complex scalars");
      cfg.field = random_u1(Lattice(o.extents), rng).links();
      return cfg;
    case GeneratorKind::ConstantFlux:
      if (o.fiber_dim != 1 || o.scalar != ScalarKind::Complex)
        throw ConfigError("constant-flux needs m = 1 and complex scalars");
      if (o.extents.size() != 2) throw ConfigError("constant-flux needs a two-dimensional lattice");
      cfg.field = constant_flux(Lattice(o.extents), o.flux).links();
      cfg.provenance->generator += ":q=" + std::to_string(o.flux);
      return cfg;
    case GeneratorKind::LaxPureGauge:
      if (o.extents.size() != 2) throw ConfigError("lax-pure-gauge needs a two-dimensional grid");
      break;
    default:
      break;
  }

  const Lattice lat(o.extents, o.kind == GeneratorKind::LaxPureGauge ? Boundary::Open : Boundary::Periodic);
  cfg.field = o.scalar == ScalarKind::Complex ? generate_typed<Complex>(o, lat, rng) : generate_typed<double>(o, lat, rng);
  return cfg;
}

}  // namespace dgauge
