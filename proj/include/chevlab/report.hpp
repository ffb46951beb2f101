#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace chevlab {

/// Line-delimited structured report: a quarantined header line carrying the
/// schema version and timestamp, one line embedding the exact run
/// configuration, then one line per record in insertion order.  Two runs
/// with the same configuration and seed produce byte-identical output below
/// the header line.
class Report {
 public:
  static constexpr const char* kSchema = "chevlab.report.v1";

  explicit Report(nlohmann::json config);

  void add(nlohmann::json record);
  const nlohmann::json& config() const { return config_; }
  /// Wall-clock for the run; lives in the quarantined header line so that
  /// the determinism contract is unaffected.
  void set_elapsed_ms(int64_t ms) { elapsed_ms_ = ms; }

  std::string to_text() const;
  void write_file(const std::string& path) const;

  /// Byte comparison of two report texts ignoring the header line.
  static bool same_below_header(const std::string& a, const std::string& b);

 private:
  nlohmann::json config_;
  std::vector<nlohmann::json> records_;
  int64_t elapsed_ms_ = -1;
};

}  // namespace chevlab
