#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace dgauge::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { Json, Csv };

/// Outcome of a command. Plain commands are `Done`; verification commands
/// end in `Pass` or `Fail`.
enum class Status { Done, Pass, Fail };

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json summary = Json::object();
  std::optional<Table> table;
  Status status = Status::Done;
  std::vector<std::string> notes;

  void verdict(bool pass) { status = pass ? Status::Pass : Status::Fail; }
  int exit_code() const { return status == Status::Fail ? 1 : 0; }
};

struct ReportOptions {
  ReportFormat format = ReportFormat::Json;
  bool timestamp = true;
};

void write_report(const Report& r, const ReportOptions& opts, std::ostream& out);

std::string to_string(Status s);

}  // namespace dgauge::cli
