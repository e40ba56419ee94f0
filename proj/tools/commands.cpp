#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "dgauge/abelian.hpp"
#include "dgauge/generate.hpp"
#include "dgauge/random.hpp"

namespace dgauge::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw UsageError("malformed " + what + " '" + s + "'");
  return v;
}

Json site_json(const Site& s) { return Json(s); }

std::string site_text(const Site& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + ")";
}

Encoding parse_encoding(const std::string& s) {
  if (s == "binary") return Encoding::Binary;
  if (s == "text") return Encoding::Text;
  throw UsageError("unknown encoding '" + s + "' (expected text or binary)");
}

bool as_b(const Options& o) {
  if (o.as == "b") return true;
  if (o.as == "u") return false;
  throw UsageError("--as must be u or b");
}

Config load(const Options& o) {
  if (o.in.empty()) throw UsageError("this command needs --in");
  return read_config(std::filesystem::path(o.in));
}

// Records the input file and what it holds.
void describe_input(Report& r, const Options& o, const Config& c) {
  const Lattice& lat = lattice_of(c.field);
  r.inputs["in"] = o.in;
  r.inputs["field_kind"] = to_string(field_kind(c.field));
  r.inputs["scalar"] = to_string(scalar_kind(c.field));
  r.inputs["extents"] = lat.extents();
  r.inputs["fiber_dim"] = fiber_dim_of(c.field);
  if (c.provenance) {
    r.inputs["generator"] = c.provenance->generator;
    r.inputs["rng"] = c.provenance->rng;
    r.inputs["seed"] = c.provenance->seed;
  } else {
    r.inputs["seed"] = o.seed ? Json(*o.seed) : Json(nullptr);
  }
}

void record_tolerance(Report& r, double tol) { r.inputs["tolerance"] = tol; }

// Calls f on the link field of a LinkMatrix config, whichever scalar it has.
template <typename F>
Report with_links(const Config& c, F&& f) {
  if (const auto* p = std::get_if<LinkField<double>>(&c.field)) return f(*p);
  if (const auto* p = std::get_if<LinkField<Complex>>(&c.field)) return f(*p);
  throw UsageError("this command needs a LinkMatrix config, got " + to_string(field_kind(c.field)));
}

template <typename Scalar>
ConnectionU<Scalar> transport_of(const LinkField<Scalar>& links, bool b) {
  return b ? to_transport(ConnectionB<Scalar>(links)) : ConnectionU<Scalar>(links);
}

template <typename Scalar>
ConnectionB<Scalar> connection_of(const LinkField<Scalar>& links, bool b) {
  return b ? ConnectionB<Scalar>(links) : from_transport(ConnectionU<Scalar>(links));
}

ConnectionU<Complex> u1_of(const Config& c, bool b) {
  const auto* p = std::get_if<LinkField<Complex>>(&c.field);
  if (!p || p->fiber_dim() != 1) throw UsageError("this command needs a complex m = 1 LinkMatrix config");
  return transport_of(*p, b);
}

void require_periodic(const Lattice& lat) {
  if (!lat.periodic()) throw UsageError("this command needs a periodic lattice");
}

std::vector<std::pair<int, int>> planes(const Options& o, int dim) {
  if (o.mu.empty() != o.nu.empty()) throw UsageError("give both --mu and --nu, or neither");
  if (!o.mu.empty()) {
    const int mu = parse_direction(o.mu, dim), nu = parse_direction(o.nu, dim);
    if (mu == nu) throw UsageError("--mu and --nu must differ");
    return {{mu, nu}};
  }
  std::vector<std::pair<int, int>> out;
  for (int mu = 0; mu < dim; ++mu)
    for (int nu = mu + 1; nu < dim; ++nu) out.emplace_back(mu, nu);
  return out;
}

}  // namespace

int parse_direction(const std::string& token, int dim) {
  int axis = 0;
  if (token == "x")
    axis = 1;
  else if (token == "y" || token == "t")
    axis = 2;
  else if (token == "z")
    axis = 3;
  else
    axis = parse_int(token, "direction");
  if (axis < 1 || axis > dim)
    throw UsageError("direction '" + token + "' is out of range 1.." + std::to_string(dim));
  return axis - 1;
}

LatticePath parse_path(const std::string& text, Site base, int dim) {
  static const std::string kMinus = "−";
  LatticePath path{std::move(base), {}};
  if (trim(text).empty()) return path;
  for (const auto& raw : split(text, ',')) {
    std::string tok = raw;
    int sign = 0;
    if (tok.size() > kMinus.size() && tok.compare(tok.size() - kMinus.size(), kMinus.size(), kMinus) == 0) {
      sign = -1;
      tok.resize(tok.size() - kMinus.size());
    } else if (tok.size() > 1 && (tok.back() == '+' || tok.back() == '-')) {
      sign = tok.back() == '+' ? 1 : -1;
      tok.pop_back();
    } else {
      throw UsageError("malformed path step '" + raw + "' (expected e.g. 1+, x-, t+)");
    }
    path.steps.push_back({parse_direction(tok, dim), sign});
  }
  return path;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& t : split(text, ',')) out.push_back(parse_int(t, "integer list entry"));
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

Report run_gen(const Options& o) {
  Report r;
  r.command = "gen";
  const auto kind = parse_generator_kind(o.kind);
  if (!kind) throw UsageError("unknown --kind '" + o.kind + "'");
  if (o.dims.empty()) throw UsageError("gen needs --dims");
  if (o.out.empty()) throw UsageError("gen needs --out");

  GenerateOptions g;
  g.kind = *kind;
  g.extents = o.dims;
  g.fiber_dim = o.m;
  g.seed = o.seed.value_or(0);
  g.flux = o.q;
  if (o.scalar == "auto")
    g.scalar = (*kind == GeneratorKind::RandomU1 || *kind == GeneratorKind::ConstantFlux) ? ScalarKind::Complex : ScalarKind::Real;
  else if (o.scalar == "real" || o.scalar == "complex")
    g.scalar = o.scalar == "real" ? ScalarKind::Real : ScalarKind::Complex;
  else
    throw UsageError("--scalar must be real, complex or auto");
  const Encoding enc = parse_encoding(o.encoding);

  const Config cfg = generate(g);
  write_config(cfg, std::filesystem::path(o.out), enc);

  r.inputs["kind"] = to_string(*kind);
  r.inputs["extents"] = o.dims;
  r.inputs["fiber_dim"] = o.m;
  r.inputs["scalar"] = to_string(g.scalar);
  r.inputs["seed"] = g.seed;
  r.inputs["rng"] = kRngName;
  if (*kind == GeneratorKind::ConstantFlux) r.inputs["q"] = o.q;
  r.summary["out"] = o.out;
  r.summary["encoding"] = to_string(enc);
  r.summary["field_kind"] = to_string(field_kind(cfg.field));
  r.summary["payload_length"] =
      payload_length(lattice_of(cfg.field), fiber_dim_of(cfg.field), scalar_kind(cfg.field), field_kind(cfg.field));
  return r;
}

Report run_gauge(const Options& o) {
  const Config c = load(o);
  if (o.out.empty()) throw UsageError("gauge needs --out");
  const bool b = as_b(o);
  const Encoding enc = parse_encoding(o.encoding);
  std::optional<Config> gcfg;
  if (!o.gauge_in.empty()) gcfg = read_config(std::filesystem::path(o.gauge_in));

  return with_links(c, [&](const auto& links) {
    using Scalar = typename std::decay_t<decltype(links)>::Matrix::Scalar;
    Report r;
    r.command = "gauge";
    describe_input(r, o, c);
    r.inputs["as"] = o.as;
    const Lattice& lat = links.lattice();
    require_periodic(lat);

    std::optional<GaugeTransform<Scalar>> g;
    if (gcfg) {
      const auto* f = std::get_if<MatrixField<Scalar>>(&gcfg->field);
      if (!f) throw UsageError("--gauge must be a SiteMatrix config with the same scalar kind as --in");
      g.emplace(*f);
      r.inputs["gauge"] = o.gauge_in;
    } else {
      if (!o.seed) throw UsageError("gauge needs --gauge FILE or --seed for a random transform");
      Rng rng(*o.seed);
      // U(1) configs stay unimodular under a phase gauge.
      if constexpr (is_complex_v<Scalar>) {
        if (links.fiber_dim() == 1) {
          g.emplace(random_u1_gauge(lat, rng));
          r.inputs["gauge"] = "random-u1-gauge";
        }
      }
      if (!g) {
        g.emplace(random_gauge<Scalar>(lat, links.fiber_dim(), rng));
        r.inputs["gauge"] = "random-gauge";
      }
      r.inputs["gauge_seed"] = *o.seed;
      r.inputs["rng"] = kRngName;
    }

    const auto u = transport_of(links, b);
    const auto u2 = gauge_transform(u, *g);
    LinkField<Scalar> out = b ? gauge_transform(ConnectionB<Scalar>(links), *g).links() : u2.links();
    write_config(Config{out, std::nullopt}, std::filesystem::path(o.out), enc);

    double trace_change = 0.0;
    for (std::size_t x = 0; x < lat.volume(); ++x)
      for (int mu = 0; mu < lat.dim(); ++mu)
        for (int nu = mu + 1; nu < lat.dim(); ++nu)
          trace_change = std::max(trace_change, std::abs(plaquette(u2, x, mu, nu).trace() - plaquette(u, x, mu, nu).trace()));
    r.summary["out"] = o.out;
    r.summary["encoding"] = to_string(enc);
    r.summary["plaquette_trace_change"] = trace_change;
    return r;
  });
}

Report run_curv(const Options& o) {
  const Config c = load(o);
  const bool b = as_b(o);
  return with_links(c, [&](const auto& links) {
    Report r;
    r.command = "curv";
    describe_input(r, o, c);
    record_tolerance(r, o.tol);
    r.inputs["as"] = o.as;
    require_periodic(links.lattice());
    const auto conn = connection_of(links, b);
    const auto u = transport_of(links, b);
    const auto f = curvature(conn);
    const auto g = curvature(u);
    const double diff = max_abs_difference(f, g);
    const double form_gap = max_abs_difference(f.as_form(), curvature_form(conn));
    const double scale = std::max(f.max_abs(), g.max_abs());
    r.summary["max_abs_F"] = f.max_abs();
    r.summary["max_abs_G"] = g.max_abs();
    r.summary["max_difference"] = diff;
    r.summary["form_gap"] = form_gap;
    r.summary["scale"] = scale;
    r.verdict(diff <= o.tol * (1.0 + scale) && form_gap <= o.tol * (1.0 + scale));
    if (o.sites) {
      Table t{{"site", "mu", "nu", "max_abs_F", "max_abs_F_minus_G"}, {}};
      const Lattice& lat = links.lattice();
      for (const auto& [key, comp] : f.components()) {
        const auto& gc = g.stored(key.first, key.second);
        for (std::size_t x = 0; x < lat.volume(); ++x)
          t.rows.push_back({site_text(lat.site(x)), key.first + 1, key.second + 1, max_abs(comp[x]), max_abs(comp[x] - gc[x])});
      }
      r.table = std::move(t);
    }
    return r;
  });
}

Report run_plaq(const Options& o) {
  const Config c = load(o);
  const bool b = as_b(o);
  return with_links(c, [&](const auto& links) {
    using Scalar = typename std::decay_t<decltype(links)>::Matrix::Scalar;
    Report r;
    r.command = "plaq";
    describe_input(r, o, c);
    r.inputs["as"] = o.as;
    const Lattice& lat = links.lattice();
    require_periodic(lat);
    if (lat.dim() < 2) throw UsageError("plaquettes need at least two directions");
    const auto u = transport_of(links, b);
    const int m = links.fiber_dim();
    const auto id = Mat<Scalar>::Identity(m, m);
    Table t{{"site", "mu", "nu", "trace_re", "trace_im", "deviation"}, {}};
    if (m == 1) t.columns.push_back("arg");
    double worst = 0.0;
    for (const auto& [mu, nu] : planes(o, lat.dim())) {
      r.inputs["planes"].push_back(Json::array({mu + 1, nu + 1}));
      for (std::size_t x = 0; x < lat.volume(); ++x) {
        const Mat<Scalar> w = plaquette(u, x, mu, nu);
        const Complex tr = Complex(w.trace());
        const double dev = max_abs(w - id);
        worst = std::max(worst, dev);
        std::vector<Json> row{site_text(lat.site(x)), mu + 1, nu + 1, tr.real(), tr.imag(), dev};
        if (m == 1) row.push_back(std::arg(tr));
        t.rows.push_back(std::move(row));
      }
    }
    r.summary["max_deviation"] = worst;
    r.summary["plaquettes"] = t.rows.size();
    r.table = std::move(t);
    return r;
  });
}

Report run_flat(const Options& o) {
  const Config c = load(o);
  const bool b = as_b(o);
  return with_links(c, [&](const auto& links) {
    Report r;
    r.command = "flat";
    describe_input(r, o, c);
    record_tolerance(r, o.tol);
    r.inputs["as"] = o.as;
    require_periodic(links.lattice());
    const auto rep = is_flat(transport_of(links, b), o.tol);
    r.summary["flat"] = rep.flat;
    r.summary["plaquette_deviation"] = rep.plaquette_deviation;
    r.summary["holonomy_deviation"] = rep.holonomy_deviation;
    r.summary["curvature_deviation"] = rep.curvature_deviation;
    r.summary["flat_by_holonomy"] = rep.flat_by_holonomy;
    r.summary["flat_by_curvature"] = rep.flat_by_curvature;
    r.verdict(rep.flat);
    return r;
  });
}

Report run_bianchi(const Options& o) {
  const Config c = load(o);
  const bool b = as_b(o);
  return with_links(c, [&](const auto& links) {
    Report r;
    r.command = "bianchi";
    describe_input(r, o, c);
    record_tolerance(r, o.tol);
    r.inputs["as"] = o.as;
    const Lattice& lat = links.lattice();
    require_periodic(lat);
    if (lat.dim() < 3) throw UsageError("bianchi needs a lattice with at least three directions");
    const auto rep = bianchi_residual(connection_of(links, b));
    r.summary["form_residual"] = rep.form_max;
    r.summary["scale"] = rep.scale;
    r.summary["epsilon_sum_shift_lambda_mu"] = rep.consistent_max;
    r.summary["epsilon_sum_shift_mu_nu"] = rep.display_max;
    r.notes.push_back("form_residual is max |d_D F - F^B + B^F|; the epsilon sums contract the component expression "
                      "with B_nu shifted by e_lambda+e_mu (twice the form residual) or by e_mu+e_nu");
    r.verdict(rep.form_max <= o.tol * (1.0 + rep.scale));
    return r;
  });
}

Report run_chern(const Options& o) {
  const Config c = load(o);
  const bool b = as_b(o);
  return with_links(c, [&](const auto& links) {
    Report r;
    r.command = "chern";
    describe_input(r, o, c);
    r.inputs["as"] = o.as;
    r.inputs["k"] = o.k;
    const Lattice& lat = links.lattice();
    require_periodic(lat);
    if (links.fiber_dim() != 1) throw UsageError("chern needs an Abelian (m = 1) config");
    if (o.k < 1 || lat.dim() < 2 * o.k) throw UsageError("chern needs 1 <= k and 2k <= lattice dimension");
    const auto density = chern_density_field(curvature(connection_of(links, b)), o.k);
    Complex total = 0.0;
    double worst = 0.0;
    Table t{{"site", "density_re", "density_im"}, {}};
    for (std::size_t x = 0; x < lat.volume(); ++x) {
      const Complex v = Complex(density[x](0, 0));
      total += v;
      worst = std::max(worst, std::abs(v));
      t.rows.push_back({site_text(lat.site(x)), v.real(), v.imag()});
    }
    r.summary["sum_re"] = total.real();
    r.summary["sum_im"] = total.imag();
    r.summary["max_abs"] = worst;
    r.notes.push_back("density is the Levi-Civita sum over all permutations of the first 2k directions, "
                      "epsilon^{12...} = +1, no 1/k! prefactor");
    if (o.sites) r.table = std::move(t);
    return r;
  });
}

Report run_charge(const Options& o) {
  const Config c = load(o);
  const auto u = u1_of(c, as_b(o));
  Report r;
  r.command = "charge";
  describe_input(r, o, c);
  record_tolerance(r, o.tol);
  const Lattice& lat = u.lattice();
  require_periodic(lat);
  int mu = 0, nu = 1;
  if (!o.mu.empty() || !o.nu.empty()) std::tie(mu, nu) = planes(o, lat.dim()).front();
  r.inputs["mu"] = mu + 1;
  r.inputs["nu"] = nu + 1;
  const auto q = topological_charge(u, mu, nu);
  r.summary["charge"] = q.charge;
  r.summary["raw"] = q.raw;
  r.summary["residual"] = q.residual;
  r.verdict(q.residual <= o.tol);
  return r;
}

Report run_limit(const Options& o) {
  Report r;
  r.command = "limit";
  record_tolerance(r, o.tol);
  SmoothPotential pot;
  if (o.potential == "smooth")
    pot = smooth_test_potential();
  else if (o.potential == "constant-flux")
    pot = constant_flux_potential(o.q);
  else
    throw UsageError("--potential must be smooth or constant-flux");
  if (o.l_list.size() < 2) throw UsageError("--L-list needs at least two extents");
  r.inputs["potential"] = pot.name;
  if (o.potential == "constant-flux") r.inputs["q"] = o.q;
  r.inputs["L_list"] = o.l_list;
  r.inputs["seed"] = nullptr;

  const auto scan = continuum_scan(pot, o.l_list);
  Table t{{"L", "a", "im_error", "re_error", "phase_error"}, {}};
  double phase = 0.0;
  for (const auto& row : scan.rows) {
    t.rows.push_back({row.extent, row.spacing, row.im_error, row.re_error, row.phase_error});
    phase = std::max(phase, row.phase_error);
  }
  r.summary["im_slope"] = scan.im_slope;
  r.summary["re_slope"] = scan.re_slope;
  r.summary["re_monotone"] = scan.re_monotone;
  r.summary["max_phase_error"] = phase;
  if (o.potential == "smooth") {
    r.inputs["min_slope"] = o.min_slope;
    r.verdict(scan.im_slope >= o.min_slope && scan.re_monotone);
  } else {
    r.verdict(phase <= o.tol);
  }
  r.table = std::move(t);
  return r;
}

Report run_lax(const Options& o) {
  const Config c = load(o);
  auto body = [&](const auto& sys) {
    using Scalar = typename std::decay_t<decltype(sys)>::Matrix::Scalar;
    Report r;
    r.command = "lax";
    describe_input(r, o, c);
    record_tolerance(r, o.tol);
    const auto rep = consistency_residual(sys);

    Site target;
    if (o.target.empty()) {
      const int tx = std::min(sys.extent_x() - 1, kMaxStaircaseSteps / 2);
      const int tt = std::min(sys.extent_t() - 1, kMaxStaircaseSteps / 2);
      target = {tx, tt};
    } else {
      target = parse_int_list(o.target);
      if (target.size() != 2) throw UsageError("--target needs two coordinates m,n");
    }
    if (!sys.grid().contains(target)) throw UsageError("--target " + site_text(target) + " is outside the grid");
    if (target[0] + target[1] > kMaxStaircaseSteps)
      throw UsageError("--target is more than " + std::to_string(kMaxStaircaseSteps) + " steps from the origin");
    Mat<Scalar> psi0 = Mat<Scalar>::Zero(1, sys.fiber_dim());
    psi0(0, 0) = Scalar(1);
    const auto paths = path_independence(sys, psi0, target);

    r.inputs["target"] = target;
    r.summary["max_additive"] = rep.max_additive;
    r.summary["max_multiplicative"] = rep.max_multiplicative;
    r.summary["max_a_form"] = rep.max_a_form;
    r.summary["a_form_gap"] = rep.form_gap;
    r.summary["path_count"] = paths.path_count;
    r.summary["path_deviation"] = paths.max_deviation;
    r.verdict(rep.max_additive <= o.tol && paths.max_deviation <= o.tol);
    if (o.sites) {
      Table t{{"m", "n", "additive", "multiplicative", "a_form"}, {}};
      for (int m = 0; m < rep.plaquettes_x; ++m)
        for (int n = 0; n < rep.plaquettes_t; ++n) {
          const auto& p = rep(m, n);
          t.rows.push_back({m, n, max_abs(p.additive), max_abs(p.multiplicative), max_abs(p.a_form)});
        }
      r.table = std::move(t);
    }
    return r;
  };
  if (const auto* p = std::get_if<LaxSystem<double>>(&c.field)) return body(*p);
  if (const auto* p = std::get_if<LaxSystem<Complex>>(&c.field)) return body(*p);
  throw UsageError("lax needs a Lax2D config, got " + to_string(field_kind(c.field)));
}

Report run_transport(const Options& o) {
  const Config c = load(o);
  const bool b = as_b(o);
  return with_links(c, [&](const auto& links) {
    using Scalar = typename std::decay_t<decltype(links)>::Matrix::Scalar;
    Report r;
    r.command = "transport";
    describe_input(r, o, c);
    r.inputs["as"] = o.as;
    const Lattice& lat = links.lattice();
    const int m = links.fiber_dim();
    Site start(static_cast<std::size_t>(lat.dim()), 0);
    if (!o.start.empty()) start = parse_int_list(o.start);
    if (!lat.contains(start)) throw UsageError("--start " + site_text(start) + " is not a lattice site");
    const auto path = parse_path(o.path, start, lat.dim());
    const int comp = parse_int(o.component, "component");
    if (comp < 1 || comp > m) throw UsageError("--component must be in 1.." + std::to_string(m));

    const auto u = transport_of(links, b);
    Mat<Scalar> a = Mat<Scalar>::Zero(1, m);
    a(0, comp - 1) = Scalar(1);
    const Mat<Scalar> result = parallel_transport(a, path, u);
    const bool closed = path.closed(lat);

    r.inputs["path"] = o.path;
    r.inputs["start"] = start;
    r.inputs["component"] = comp;
    r.summary["steps"] = path.steps.size();
    r.summary["end"] = site_json(lat.site(path.end(lat)));
    r.summary["closed"] = closed;
    if (closed) r.summary["holonomy_deviation"] = max_abs(result - a);
    Table t{{"component", "value_re", "value_im"}, {}};
    for (int i = 0; i < m; ++i) {
      const Complex v = Complex(result(0, i));
      t.rows.push_back({i + 1, v.real(), v.imag()});
    }
    r.table = std::move(t);
    return r;
  });
}

}  // namespace dgauge::cli
