#include "output.hpp"

#include <charconv>
#include <cmath>
#include "json.hpp"
#include <stdexcept>

namespace nlgauge::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& config_hash,
                     const std::vector<std::string>& columns)
    : os_(path), columns_(columns.size()) {
  if (!os_) throw std::runtime_error("cannot write " + path.string());
  os_ << "# nlgauge " << kVersion << " schema=" << kSchemaVersion << " config=" << config_hash
      << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
  os_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  if (in_row_ == columns_) throw std::logic_error("CsvWriter: too many cells in row");
  os_ << (in_row_ ? "," : "") << s;
  ++in_row_;
  return *this;
}

void CsvWriter::end_row() {
  if (in_row_ != columns_) throw std::logic_error("CsvWriter: incomplete row");
  os_ << '\n';
  in_row_ = 0;
}

double RunReport::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics) {
    if (k == name) return v;
  }
  throw std::out_of_range("no metric " + name);
}

namespace {

nlohmann::json number(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

void write_report(const std::filesystem::path& path, const RunReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["nlgauge_version"] = kVersion;
  j["command"] = r.command;
  j["config_hash"] = r.config_hash;
  j["status"] = r.status;
  j["exit_code"] = r.exit_code;
  j["abort_reason"] = r.abort_reason;
  j["wall_seconds"] = r.wall_seconds;
  auto& m = j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.metrics) m[k] = number(v);
  auto& d = j["diagnostics"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.diagnostics.size(); ++i) {
    const auto& g = r.diagnostics[i];
    d.push_back({{"t", r.times[i]},
                 {"norm", number(g.norm)},
                 {"linear_energy", number(g.linear_energy)},
                 {"max_abs", number(g.max_abs)}});
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

void write_resolved(const std::filesystem::path& out_dir, const ScenarioConfig& cfg) {
  std::ofstream os(out_dir / "resolved.ini");
  if (!os) throw std::runtime_error("cannot write " + (out_dir / "resolved.ini").string());
  os << cfg.resolved_text;
}

}  // namespace nlgauge::cli
