#include "report.hpp"

#include <ctime>
#include <ostream>

#include "dgauge/io.hpp"

namespace dgauge::cli {

namespace {

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// CSV cell for a scalar JSON value; strings are quoted when needed.
std::string cell(const Json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }
  return v.dump();
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object())
      flatten(value, name, out);
    else
      out << name << ',' << cell(value.is_array() ? Json(value.dump()) : value) << '\n';
  }
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    default:
      return "OK";
  }
}

void write_report(const Report& r, const ReportOptions& opts, std::ostream& out) {
  Json meta = Json::object();
  meta["schema_version"] = kReportSchemaVersion;
  meta["format_version"] = kFormatVersion;
  meta["command"] = r.command;
  if (opts.timestamp) meta["timestamp"] = utc_now();

  if (opts.format == ReportFormat::Json) {
    Json j = meta;
    j["inputs"] = r.inputs;
    j["summary"] = r.summary;
    j["status"] = to_string(r.status);
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (r.table) {
      j["table"]["columns"] = r.table->columns;
      j["table"]["rows"] = r.table->rows;
    }
    out << j.dump(2) << '\n';
    return;
  }

  out << "key,value\n";
  flatten(meta, "", out);
  flatten(r.inputs, "inputs", out);
  flatten(r.summary, "summary", out);
  for (const auto& n : r.notes) out << "note," << cell(Json(n)) << '\n';
  out << "status," << to_string(r.status) << '\n';
  if (r.table) {
    out << '\n';
    for (std::size_t i = 0; i < r.table->columns.size(); ++i) out << (i ? "," : "") << r.table->columns[i];
    out << '\n';
    for (const auto& row : r.table->rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell(row[i]);
      out << '\n';
    }
  }
}

}  // namespace dgauge::cli
