#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "dgauge/error.hpp"

using namespace dgauge::cli;

namespace {

constexpr const char* kFooter = R"(Reports
  JSON (default): schema_version, format_version, command, timestamp, inputs,
  summary, status (OK, PASS or FAIL), optional notes and table {columns, rows}.
  CSV: a "key,value" section holding the same fields flattened with dotted
  keys (inputs.tolerance, summary.max_difference, ...) and a final status
  row; when a table is present it follows after one blank line with its own
  header row. Table columns per command:
    plaq       site,mu,nu,trace_re,trace_im,deviation[,arg when m = 1]
    curv       site,mu,nu,max_abs_F,max_abs_F_minus_G        (with --sites)
    chern      site,density_re,density_im                   (with --sites)
    limit      L,a,im_error,re_error,phase_error
    lax        m,n,additive,multiplicative,a_form            (with --sites)
    transport  component,value_re,value_im

Directions are 1-based (x = 1, y = t = 2, z = 3); sites are 0-based
coordinates. Exit codes: 0 success or PASS, 1 verification FAIL, 2 usage or
IO error.)";

struct Common {
  std::string format = "json";
  std::string report;
  bool no_timestamp = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Difference discrete connections, curvature and Lax pairs on hypercubic lattices", "dgauge"};
  app.footer(kFooter);
  app.require_subcommand(1);

  Options o;
  Common common;
  std::function<Report(const Options&)> run;

  auto add_common = [&](CLI::App* sub, std::function<Report(const Options&)> fn) {
    sub->add_option("--format", common.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--report", common.report, "Write the report to this file instead of stdout");
    sub->add_flag("--no-timestamp", common.no_timestamp, "Omit the timestamp so reports are byte-reproducible");
    sub->add_option("--seed", o.seed, "Seed for random generation");
    sub->callback([&run, fn] { run = fn; });
  };
  auto add_in = [&](CLI::App* sub) { sub->add_option("--in", o.in, "Input config file")->required(); };
  auto add_as = [&](CLI::App* sub) {
    sub->add_option("--as", o.as, "Read links as transports U (u) or connection B = U - I (b)")
        ->check(CLI::IsMember({"u", "b"}));
  };
  auto add_tol = [&](CLI::App* sub) { sub->add_option("--tol", o.tol, "Verification tolerance")->check(CLI::NonNegativeNumber); };
  auto add_plane = [&](CLI::App* sub) {
    sub->add_option("--mu", o.mu, "First direction");
    sub->add_option("--nu", o.nu, "Second direction");
  };

  auto* gen = app.add_subcommand("gen", "Generate a config");
  add_common(gen, run_gen);
  gen->add_option("--kind", o.kind, "random-gl, random-u1, pure-gauge, constant-flux, lax-pure-gauge, random-gauge")
      ->required();
  gen->add_option("--dims", o.dims, "Lattice extents, e.g. 8,8")->delimiter(',')->required();
  gen->add_option("--m", o.m, "Fiber dimension")->check(CLI::PositiveNumber);
  gen->add_option("--q", o.q, "Flux quanta for constant-flux");
  gen->add_option("--scalar", o.scalar, "real, complex or auto")->check(CLI::IsMember({"real", "complex", "auto"}));
  gen->add_option("--encoding", o.encoding, "binary or text")->check(CLI::IsMember({"binary", "text"}));
  gen->add_option("--out", o.out, "Output config file")->required();

  auto* gauge = app.add_subcommand("gauge", "Gauge transform a link config");
  add_common(gauge, run_gauge);
  add_in(gauge);
  add_as(gauge);
  gauge->add_option("--gauge", o.gauge_in, "SiteMatrix config holding g; otherwise a random g from --seed (phases when m = 1 complex)");
  gauge->add_option("--encoding", o.encoding, "binary or text")->check(CLI::IsMember({"binary", "text"}));
  gauge->add_option("--out", o.out, "Output config file")->required();

  auto* curv = app.add_subcommand("curv", "Curvature from B and from U = I + B; checks they agree");
  add_common(curv, run_curv);
  add_in(curv);
  add_as(curv);
  add_tol(curv);
  curv->add_flag("--sites", o.sites, "Include a per-site table");

  auto* plaq = app.add_subcommand("plaq", "Plaquette variables W_{mu nu}(x)");
  add_common(plaq, run_plaq);
  add_in(plaq);
  add_as(plaq);
  add_plane(plaq);

  auto* flat = app.add_subcommand("flat", "Flatness check: max |W - I| <= tol");
  add_common(flat, run_flat);
  add_in(flat);
  add_as(flat);
  add_tol(flat);

  auto* bianchi = app.add_subcommand("bianchi", "Bianchi identity residual d_D F - F^B + B^F");
  add_common(bianchi, run_bianchi);
  add_in(bianchi);
  add_as(bianchi);
  add_tol(bianchi);

  auto* chern = app.add_subcommand("chern", "Abelian Chern density");
  add_common(chern, run_chern);
  add_in(chern);
  add_as(chern);
  chern->add_option("--k", o.k, "Order of the Chern class")->check(CLI::PositiveNumber);
  chern->add_flag("--sites", o.sites, "Include a per-site table");

  auto* charge = app.add_subcommand("charge", "U(1) topological charge");
  add_common(charge, run_charge);
  add_in(charge);
  add_as(charge);
  add_tol(charge);
  add_plane(charge);

  auto* limit = app.add_subcommand("limit", "Continuum-limit scan of the plaquette");
  add_common(limit, run_limit);
  add_tol(limit);
  limit->add_option("--L-list", o.l_list, "Lattice extents, e.g. 8,16,32,64")->delimiter(',');
  limit->add_option("--potential", o.potential, "smooth or constant-flux")->check(CLI::IsMember({"smooth", "constant-flux"}));
  limit->add_option("--q", o.q, "Flux quanta for constant-flux");
  limit->add_option("--min-slope", o.min_slope, "Required log-log slope of the Im error");

  auto* lax = app.add_subcommand("lax", "Lax pair consistency and path independence");
  add_common(lax, run_lax);
  add_in(lax);
  add_tol(lax);
  lax->add_option("--target", o.target, "Target site m,n for path enumeration");
  lax->add_flag("--sites", o.sites, "Include a per-plaquette table");

  auto* transport = app.add_subcommand("transport", "Parallel transport of a unit row vector along a path");
  add_common(transport, run_transport);
  add_in(transport);
  add_as(transport);
  transport->add_option("--path", o.path, "Steps, e.g. 1+,2+,1-,2- or x+,t+")->required();
  transport->add_option("--start", o.start, "Start site, e.g. 0,0");
  transport->add_option("--component", o.component, "Which unit vector e_i to transport");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Report r = run(o);
    ReportOptions ro;
    ro.format = common.format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
    ro.timestamp = !common.no_timestamp;
    if (common.report.empty()) {
      write_report(r, ro, std::cout);
    } else {
      std::ofstream out(common.report, std::ios::binary);
      if (!out) throw UsageError("cannot open report file '" + common.report + "'");
      write_report(r, ro, out);
    }
    if (r.status == Status::Fail) std::cerr << "dgauge " << r.command << ": verification FAILED\n";
    return r.exit_code();
  } catch (const UsageError& e) {
    std::cerr << "dgauge: " << e.what() << '\n';
    return 2;
  } catch (const dgauge::Error& e) {
    std::cerr << "dgauge: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dgauge: " << e.what() << '\n';
    return 2;
  }
}
