#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dgauge/io.hpp"

namespace dgauge {

enum class GeneratorKind {
  RandomGL,      // LinkMatrix, entries uniform in [-0.5, 0.5), redrawn until invertible
  RandomU1,      // LinkMatrix, m = 1 complex, phases uniform in (-pi, pi]
  PureGauge,     // LinkMatrix, U_mu(x) = g^-1(x) g(x + e_mu)
  ConstantFlux,  // LinkMatrix, 2D periodic U(1) with q flux quanta
  LaxPureGauge,  // Lax2D, pure-gauge pair on an open grid
  RandomGauge,   // SiteMatrix, well-conditioned gauge transform
};

struct GenerateOptions {
  GeneratorKind kind = GeneratorKind::RandomGL;
  std::vector<int> extents;
  int fiber_dim = 1;
  ScalarKind scalar = ScalarKind::Real;
  std::uint64_t seed = 0;
  int flux = 0;  // q, ConstantFlux only
};

std::string to_string(GeneratorKind k);
std::optional<GeneratorKind> parse_generator_kind(std::string_view name);

/// Deterministic for fixed options. Throws ConfigError for incompatible
/// kind/parameter combinations.
Config generate(const GenerateOptions& opts);

}  // namespace dgauge
