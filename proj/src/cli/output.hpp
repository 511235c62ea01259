#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "nlgauge/cli/commands.hpp"

namespace nlgauge::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest decimal that round-trips; "nan"/"inf" for non-finite values.
std::string format_number(double v);

/// CSV with a leading "# nlgauge <version> schema=<n> config=<hash>" line and
/// fixed columns. Cells are written as given; numbers go through format_number.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& config_hash,
            const std::vector<std::string>& columns);

  CsvWriter& cell(const std::string& s);
  CsvWriter& cell(double v) { return cell(format_number(v)); }
  CsvWriter& cell(std::size_t v) { return cell(std::to_string(v)); }
  void end_row();

 private:
  std::ofstream os_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

void write_report(const std::filesystem::path& path, const RunReport& report);
void write_resolved(const std::filesystem::path& out_dir, const ScenarioConfig& cfg);

}  // namespace nlgauge::cli
