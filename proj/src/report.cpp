#include "tec/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tec/errors.hpp"
#include "tec/tensor_io.hpp"

namespace tec {

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

CheckRecord make_check(std::string name, double lhs, double rhs) {
  CheckRecord c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.pass = lhs <= rhs;
  return c;
}

CheckRecord make_skip(std::string name, std::string reason) {
  CheckRecord c;
  c.name = std::move(name);
  c.skipped = true;
  c.reason = std::move(reason);
  return c;
}

namespace {

using nlohmann::json;

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  throw ConfigError("report: bad number '" + s + "'");
}

std::string csv_number(double v) {
  if (std::isfinite(v)) return format_double(v);
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double parse_csv_number(const std::string& s) {
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  double v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw ConfigError("csv: bad number '" + s + "'");
  return v;
}

}  // namespace

std::string to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"lhs", number(c.lhs)},
                      {"rhs", number(c.rhs)},
                      {"margin", number(c.margin)},
                      {"pass", c.pass},
                      {"skipped", c.skipped},
                      {"reason", c.reason}});
  }
  json table = json::array();
  for (const auto& row : r.tail_table) {
    table.push_back({{"theta", number(row.theta)},
                     {"p_hat", number(row.p_hat)},
                     {"stderr", number(row.std_error)},
                     {"bound", number(row.bound)},
                     {"vacuous", row.vacuous},
                     {"assumption3_violations", row.assumption3_violations}});
  }
  json doc = {{"schema", kReportSchema},
              {"suite", r.suite},
              {"config", r.config},
              {"checks", checks},
              {"tail_table", table},
              {"all_pass", r.all_pass()},
              {"environment", {{"version", r.version}, {"seed", r.seed}}}};
  return doc.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("schema").get<std::string>() != kReportSchema) throw ConfigError("report: unknown schema");
    Report r;
    r.suite = doc.at("suite").get<std::string>();
    r.config = doc.at("config").get<std::map<std::string, std::string>>();
    for (const auto& c : doc.at("checks")) {
      CheckRecord rec;
      rec.name = c.at("name").get<std::string>();
      rec.lhs = number_from(c.at("lhs"));
      rec.rhs = number_from(c.at("rhs"));
      rec.margin = number_from(c.at("margin"));
      rec.pass = c.at("pass").get<bool>();
      rec.skipped = c.at("skipped").get<bool>();
      rec.reason = c.at("reason").get<std::string>();
      r.checks.push_back(std::move(rec));
    }
    for (const auto& t : doc.at("tail_table")) {
      TailRow row;
      row.theta = number_from(t.at("theta"));
      row.p_hat = number_from(t.at("p_hat"));
      row.std_error = number_from(t.at("stderr"));
      row.bound = number_from(t.at("bound"));
      row.vacuous = t.at("vacuous").get<bool>();
      row.assumption3_violations = t.at("assumption3_violations").get<std::size_t>();
      r.tail_table.push_back(row);
    }
    r.version = doc.at("environment").at("version").get<std::string>();
    r.seed = doc.at("environment").at("seed").get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
}

std::string tail_to_csv(const std::vector<TailRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += csv_number(r.theta) + "," + csv_number(r.p_hat) + "," + csv_number(r.std_error) + "," +
           csv_number(r.bound) + "," + (r.vacuous ? "true" : "false") + "," +
           std::to_string(r.assumption3_violations) + "\n";
  }
  return out;
}

std::vector<TailRow> tail_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw ConfigError("csv: missing or wrong header");
  std::vector<TailRow> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 6) throw ConfigError("csv:" + std::to_string(line_no) + ": expected 6 fields");
    TailRow r;
    r.theta = parse_csv_number(f[0]);
    r.p_hat = parse_csv_number(f[1]);
    r.std_error = parse_csv_number(f[2]);
    r.bound = parse_csv_number(f[3]);
    if (f[4] != "true" && f[4] != "false") throw ConfigError("csv:" + std::to_string(line_no) + ": bad vacuous flag");
    r.vacuous = f[4] == "true";
    r.assumption3_violations = static_cast<std::size_t>(parse_csv_number(f[5]));
    rows.push_back(r);
  }
  return rows;
}

void emit(const Report& r, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << (format == ReportFormat::json ? to_json(r) : tail_to_csv(r.tail_table));
  out.close();
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace tec
