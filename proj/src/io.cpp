#include "dgauge/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace dgauge {

namespace {

constexpr const char* kMagic = "dgauge-config";

template <typename Scalar>
void append_matrix(std::vector<double>& out, const Mat<Scalar>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if constexpr (is_complex_v<Scalar>) {
        out.push_back(m(i, j).real());
        out.push_back(m(i, j).imag());
      } else {
        out.push_back(m(i, j));
      }
    }
  }
}

template <typename Scalar>
Mat<Scalar> take_matrix(const std::vector<double>& in, std::size_t& pos, int dim) {
  Mat<Scalar> m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if constexpr (is_complex_v<Scalar>) {
        m(i, j) = Scalar(in[pos], in[pos + 1]);
        pos += 2;
      } else {
        m(i, j) = in[pos++];
      }
    }
  }
  return m;
}

struct Flattener {
  std::vector<double> out;

  template <typename Scalar>
  void operator()(const MatrixField<Scalar>& f) {
    if (!f.square()) throw ShapeError("only square site fields can be serialized");
    for (const auto& v : f) append_matrix(out, v);
  }
  template <typename Scalar>
  void operator()(const LinkField<Scalar>& f) {
    for (const auto& v : f.values()) append_matrix(out, v);
  }
  template <typename Scalar>
  void operator()(const LaxSystem<Scalar>& s) {
    (*this)(s.links());
  }
};

template <typename Scalar>
AnyField build_field(const ConfigHeader& h, const std::vector<double>& payload) {
  std::size_t pos = 0;
  switch (h.kind) {
    case FieldKind::SiteMatrix: {
      MatrixField<Scalar> f(h.lattice, h.fiber_dim);
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = take_matrix<Scalar>(payload, pos, h.fiber_dim);
      return f;
    }
    case FieldKind::LinkMatrix:
    case FieldKind::Lax2D: {
      LinkField<Scalar> f(h.lattice, h.fiber_dim);
      for (auto& v : f.values()) v = take_matrix<Scalar>(payload, pos, h.fiber_dim);
      if (h.kind == FieldKind::LinkMatrix) return f;
      return LaxSystem<Scalar>(std::move(f));
    }
  }
  throw FormatError("unknown field kind");
}

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto res = std::from_chars(first, s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw FormatError("malformed number '" + s + "'");
  return v;
}

template <typename T>
T parse_int(const std::string& s, const std::string& what) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw FormatError("malformed " + what + " '" + s + "'");
  return v;
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream s(line);
  std::vector<std::string> words;
  for (std::string w; s >> w;) words.push_back(w);
  return words;
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

FieldKind field_kind(const AnyField& f) {
  switch (f.index()) {
    case 0:
    case 1:
      return FieldKind::SiteMatrix;
    case 2:
    case 3:
      return FieldKind::LinkMatrix;
    default:
      return FieldKind::Lax2D;
  }
}

ScalarKind scalar_kind(const AnyField& f) { return f.index() % 2 ? ScalarKind::Complex : ScalarKind::Real; }

const Lattice& lattice_of(const AnyField& f) {
  return std::visit([](const auto& v) -> const Lattice& { return v.lattice(); }, f);
}

int fiber_dim_of(const AnyField& f) {
  return std::visit([](const auto& v) { return v.fiber_dim(); }, f);
}

std::size_t payload_length(const Lattice& lat, int fiber_dim, ScalarKind scalar, FieldKind kind) {
  const std::size_t cells = kind == FieldKind::SiteMatrix ? lat.volume() : lat.link_count();
  const auto m = static_cast<std::size_t>(fiber_dim);
  return cells * m * m * (scalar == ScalarKind::Complex ? 2u : 1u);
}

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::SiteMatrix:
      return "SiteMatrix";
    case FieldKind::LinkMatrix:
      return "LinkMatrix";
    case FieldKind::Lax2D:
      return "Lax2D";
  }
  return "?";
}

std::string to_string(ScalarKind k) { return k == ScalarKind::Complex ? "complex" : "real"; }
std::string to_string(Encoding e) { return e == Encoding::Binary ? "binary" : "text"; }

void write_config(const Config& cfg, std::ostream& out, Encoding encoding) {
  const Lattice& lat = lattice_of(cfg.field);
  const int m = fiber_dim_of(cfg.field);
  const FieldKind kind = field_kind(cfg.field);
  const ScalarKind scalar = scalar_kind(cfg.field);

  Flattener flat;
  std::visit(flat, cfg.field);
  if (flat.out.size() != payload_length(lat, m, scalar, kind))
    throw ConsistencyError("internal: payload length does not match header");

  out << kMagic << '\n';
  out << "format_version " << kFormatVersion << '\n';
  out << "encoding " << to_string(encoding) << '\n';
  out << "dim " << lat.dim() << '\n';
  out << "extents";
  for (int l : lat.extents()) out << ' ' << l;
  out << "\nboundary";
  for (Boundary b : lat.boundaries()) out << (b == Boundary::Periodic ? " periodic" : " open");
  out << "\nfiber_dim " << m << '\n';
  out << "scalar " << to_string(scalar) << '\n';
  out << "field_kind " << to_string(kind) << '\n';
  if (cfg.provenance) {
    out << "generator " << cfg.provenance->generator << '\n';
    out << "rng " << cfg.provenance->rng << '\n';
    out << "seed " << cfg.provenance->seed << '\n';
  }
  out << "payload " << flat.out.size() << '\n';
  out << "data\n";

  if (encoding == Encoding::Text) {
    for (double v : flat.out) out << format_double(v) << '\n';
  } else {
    for (double v : flat.out) {
      const std::uint64_t le = to_little_endian(std::bit_cast<std::uint64_t>(v));
      char bytes[8];
      std::memcpy(bytes, &le, 8);
      out.write(bytes, 8);
    }
  }
  if (!out) throw FormatError("write failed");
}

void write_config(const Config& cfg, const std::filesystem::path& path, Encoding encoding) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  write_config(cfg, out, encoding);
}

ConfigHeader read_header(std::istream& in) {
  std::string line;
  if (!next_line(in, line) || line != kMagic) throw FormatError("not a dgauge config file (missing magic line)");

  if (!next_line(in, line)) throw TruncationError("header ends before format_version");
  auto words = split_words(line);
  if (words.size() != 2 || words[0] != "format_version") throw FormatError("format_version must follow the magic line");
  ConfigHeader h;
  h.format_version = parse_int<int>(words[1], "format_version");
  if (h.format_version != kFormatVersion)
    throw VersionError("unsupported format_version " + words[1] + " (this build reads version " +
                       std::to_string(kFormatVersion) + ")");

  std::optional<int> dim, fiber;
  std::optional<std::vector<int>> extents;
  std::optional<std::vector<Boundary>> boundaries;
  std::optional<ScalarKind> scalar;
  std::optional<FieldKind> kind;
  std::optional<Encoding> encoding;
  std::optional<std::size_t> payload;
  Provenance prov;
  bool has_prov = false;

  for (;;) {
    if (!next_line(in, line)) throw TruncationError("header ends before 'data' line");
    if (line == "data") break;
    words = split_words(line);
    if (words.empty()) continue;
    const std::string& key = words[0];
    auto single = [&]() -> const std::string& {
      if (words.size() != 2) throw FormatError("header key '" + key + "' expects one value");
      return words[1];
    };
    if (key == "encoding") {
      const auto& v = single();
      if (v == "text")
        encoding = Encoding::Text;
      else if (v == "binary")
        encoding = Encoding::Binary;
      else
        throw FormatError("unknown encoding '" + v + "'");
    } else if (key == "dim") {
      dim = parse_int<int>(single(), "dim");
    } else if (key == "extents") {
      extents.emplace();
      for (std::size_t i = 1; i < words.size(); ++i) extents->push_back(parse_int<int>(words[i], "extent"));
    } else if (key == "boundary") {
      boundaries.emplace();
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i] == "periodic")
          boundaries->push_back(Boundary::Periodic);
        else if (words[i] == "open")
          boundaries->push_back(Boundary::Open);
        else
          throw FormatError("unknown boundary '" + words[i] + "'");
      }
    } else if (key == "fiber_dim") {
      fiber = parse_int<int>(single(), "fiber_dim");
    } else if (key == "scalar") {
      const auto& v = single();
      if (v == "real")
        scalar = ScalarKind::Real;
      else if (v == "complex")
        scalar = ScalarKind::Complex;
      else
        throw FormatError("unknown scalar kind '" + v + "'");
    } else if (key == "field_kind") {
      const auto& v = single();
      if (v == "SiteMatrix")
        kind = FieldKind::SiteMatrix;
      else if (v == "LinkMatrix")
        kind = FieldKind::LinkMatrix;
      else if (v == "Lax2D")
        kind = FieldKind::Lax2D;
      else
        throw FormatError("unknown field_kind '" + v + "'");
    } else if (key == "generator") {
      prov.generator = single();
      has_prov = true;
    } else if (key == "rng") {
      prov.rng = single();
      has_prov = true;
    } else if (key == "seed") {
      prov.seed = parse_int<std::uint64_t>(single(), "seed");
      has_prov = true;
    } else if (key == "payload") {
      payload = parse_int<std::size_t>(single(), "payload");
    } else {
      throw FormatError("unknown header key '" + key + "'");
    }
  }

  if (!encoding || !dim || !extents || !boundaries || !fiber || !scalar || !kind || !payload)
    throw FormatError("header is missing a required key");
  if (*dim < 1 || static_cast<int>(extents->size()) != *dim || static_cast<int>(boundaries->size()) != *dim)
    throw ConsistencyError("dim " + std::to_string(*dim) + " disagrees with extents/boundary lists");
  for (int l : *extents)
    if (l < 1) throw ConsistencyError("extents must be positive");
  if (*fiber < 1) throw ConsistencyError("fiber_dim must be positive");

  h.encoding = *encoding;
  h.lattice = Lattice(*extents, *boundaries);
  h.fiber_dim = *fiber;
  h.scalar = *scalar;
  h.kind = *kind;
  h.payload_length = *payload;
  if (has_prov) h.provenance = prov;

  if (h.kind == FieldKind::Lax2D &&
      (*dim != 2 || h.lattice.boundary(0) != Boundary::Open || h.lattice.boundary(1) != Boundary::Open))
    throw ConsistencyError("Lax2D needs a two-dimensional grid with open boundaries");
  const std::size_t expected = payload_length(h.lattice, h.fiber_dim, h.scalar, h.kind);
  if (h.payload_length != expected)
    throw ConsistencyError("declared payload length " + std::to_string(h.payload_length) +
                           " is inconsistent with extents and fiber_dim (expected " + std::to_string(expected) + ")");
  return h;
}

Config read_config(std::istream& in) {
  const ConfigHeader h = read_header(in);
  std::vector<double> payload;
  payload.reserve(h.payload_length);

  if (h.encoding == Encoding::Text) {
    std::string line;
    while (payload.size() < h.payload_length && next_line(in, line)) {
      if (line.empty()) continue;
      payload.push_back(parse_double(line));
    }
    if (payload.size() < h.payload_length)
      throw TruncationError("truncated payload: expected " + std::to_string(h.payload_length) + " values, found " +
                            std::to_string(payload.size()));
    while (next_line(in, line))
      if (!split_words(line).empty()) throw FormatError("trailing data after payload");
  } else {
    char bytes[8];
    while (payload.size() < h.payload_length && in.read(bytes, 8)) {
      std::uint64_t le = 0;
      std::memcpy(&le, bytes, 8);
      payload.push_back(std::bit_cast<double>(to_little_endian(le)));
    }
    if (payload.size() < h.payload_length)
      throw TruncationError("truncated payload: expected " + std::to_string(h.payload_length) + " values, found " +
                            std::to_string(payload.size()));
    if (in.peek() != std::char_traits<char>::eof()) throw FormatError("trailing data after payload");
  }

  Config cfg{h.scalar == ScalarKind::Complex ? build_field<Complex>(h, payload) : build_field<double>(h, payload),
             h.provenance};
  return cfg;
}

Config read_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  return read_config(in);
}

}  // namespace dgauge
