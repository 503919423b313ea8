#include "walshlab/report.hpp"

#include <cstdio>
#include <sstream>

namespace walshlab {

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown format: " + std::string(text));
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["resolution"] = resolution;
  j["depth"] = depth;
  j["p"] = p;
  j["system"] = system;
  j["n_max"] = n_max;
  j["A"] = A;
  j["i_list"] = i_list;
  j["n_list"] = n_list;
  j["mode"] = exact ? "exact" : "float";
  j["format"] = format == OutputFormat::csv ? "csv" : "json";
  j["out"] = out;
  j["seed"] = seed;
  j["kind"] = kind;
  j["n"] = n;
  return j;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["claim"] = report.claim;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.parameters) params[k] = v;
  j["parameters"] = params;
  j["verdict"] = report.passed ? "pass" : "fail";
  if (report.witness) {
    nlohmann::ordered_json w;
    w["point"] = report.witness->point ? nlohmann::ordered_json(*report.witness->point) : nullptr;
    w["n"] = report.witness->n ? nlohmann::ordered_json(*report.witness->n) : nullptr;
    w["value"] = report.witness->value;
    w["note"] = report.witness->note;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["mode"] = report.mode;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.metrics) metrics[k] = v;
  j["metrics"] = metrics;
  if (report.table) {
    j["table"] = {{"columns", report.table->columns}, {"rows", report.table->rows}};
  }
  return j;
}

std::string render_json(const RunConfig& config, const std::vector<VerificationReport>& reports) {
  nlohmann::ordered_json doc;
  doc["config"] = config.to_json();
  doc["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) doc["reports"].push_back(to_json(r));
  return doc.dump(2) + "\n";
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_row(std::ostringstream& os, const std::vector<std::string>& row) {
  for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_cell(row[k]);
  os << '\n';
}

void write_config(std::ostringstream& os, const RunConfig& config) {
  os << "# config " << config.to_json().dump() << '\n';
}

}  // namespace

std::string render_csv(const RunConfig& config, const Table& table) {
  std::ostringstream os;
  write_config(os, config);
  write_row(os, table.columns);
  for (const auto& row : table.rows) write_row(os, row);
  return os.str();
}

std::string render_csv(const RunConfig& config, const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  write_config(os, config);
  for (const auto& r : reports) {
    os << "# claim " << r.claim << " verdict " << (r.passed ? "pass" : "fail") << '\n';
    if (r.table) {
      write_row(os, r.table->columns);
      for (const auto& row : r.table->rows) write_row(os, row);
    } else {
      write_row(os, {"claim", "verdict", "witness_point", "witness_n", "witness_value", "mode"});
      const auto& w = r.witness;
      write_row(os, {r.claim, r.passed ? "pass" : "fail",
                     w && w->point ? std::to_string(*w->point) : "",
                     w && w->n ? std::to_string(*w->n) : "", w ? w->value : "", r.mode});
    }
  }
  return os.str();
}

Table kernel_table(const ExactFunction& kernel, bool exact) {
  Table t;
  if (exact) t.columns = {"index", "value_numerator", "value_denominator"};
  else t.columns = {"index", "value"};
  for (Index j = 0; j < kernel.size(); ++j) {
    if (exact)
      t.rows.push_back({std::to_string(j), kernel[j].get_num().get_str(), kernel[j].get_den().get_str()});
    else
      t.rows.push_back({std::to_string(j), format_double(kernel[j].get_d())});
  }
  return t;
}

}  // namespace walshlab
