#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "dgauge/laxpair.hpp"

namespace dgauge {

enum class FieldKind { SiteMatrix, LinkMatrix, Lax2D };
enum class Encoding { Text, Binary };

inline constexpr int kFormatVersion = 1;

/// Where a generated config came from. Regenerating needs the same
/// generator, engine and seed within this implementation.
struct Provenance {
  std::string generator;
  std::string rng;
  std::uint64_t seed = 0;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

using AnyField = std::variant<MatrixField<double>, MatrixField<Complex>, LinkField<double>, LinkField<Complex>,
                              LaxSystem<double>, LaxSystem<Complex>>;

struct Config {
  AnyField field;
  std::optional<Provenance> provenance;
};

/// Parsed header. `payload_length` counts doubles, so a complex entry counts
/// twice.
struct ConfigHeader {
  int format_version = kFormatVersion;
  Encoding encoding = Encoding::Binary;
  Lattice lattice{{1}};
  int fiber_dim = 1;
  ScalarKind scalar = ScalarKind::Real;
  FieldKind kind = FieldKind::SiteMatrix;
  std::optional<Provenance> provenance;
  std::size_t payload_length = 0;
};

FieldKind field_kind(const AnyField& f);
ScalarKind scalar_kind(const AnyField& f);
const Lattice& lattice_of(const AnyField& f);
int fiber_dim_of(const AnyField& f);

/// Number of doubles a payload must hold:
/// (#sites or #links) x m^2 x (1 for real, 2 for complex).
std::size_t payload_length(const Lattice& lat, int fiber_dim, ScalarKind scalar, FieldKind kind);

std::string to_string(FieldKind k);
std::string to_string(ScalarKind k);
std::string to_string(Encoding e);

void write_config(const Config& cfg, std::ostream& out, Encoding encoding);
void write_config(const Config& cfg, const std::filesystem::path& path, Encoding encoding);
Config read_config(std::istream& in);
Config read_config(const std::filesystem::path& path);
/// Reads and validates the header only.
ConfigHeader read_header(std::istream& in);

}  // namespace dgauge
