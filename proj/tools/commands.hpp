#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgauge/connection.hpp"
#include "report.hpp"

namespace dgauge::cli {

/// Bad flags or a config that does not fit the command. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string in;
  std::string out;
  std::string gauge_in;
  std::optional<std::uint64_t> seed;
  double tol = 1e-10;

  std::string mu;
  std::string nu;
  int k = 1;
  int q = 1;
  std::string path;
  std::string start;
  std::string component = "1";
  std::string target;
  std::vector<int> l_list{8, 16, 32, 64};
  std::string potential = "smooth";
  double min_slope = 1.8;

  std::vector<int> dims;
  int m = 1;
  std::string kind;
  std::string scalar = "auto";
  std::string encoding = "binary";
  std::string as = "u";
  bool sites = false;
};

Report run_gen(const Options& o);
Report run_gauge(const Options& o);
Report run_curv(const Options& o);
Report run_plaq(const Options& o);
Report run_flat(const Options& o);
Report run_bianchi(const Options& o);
Report run_chern(const Options& o);
Report run_charge(const Options& o);
Report run_limit(const Options& o);
Report run_lax(const Options& o);
Report run_transport(const Options& o);

/// Direction token: 1-based integer, or x (= 1), y or t (= 2), z (= 3).
/// Returns the 0-based axis.
int parse_direction(const std::string& token, int dim);

/// "1+,2-,x+,t-"; the sign may also be U+2212 MINUS SIGN.
LatticePath parse_path(const std::string& text, Site base, int dim);

/// "0,2,1" -> {0, 2, 1}.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace dgauge::cli
