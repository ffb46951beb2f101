#include "chevlab/report.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace chevlab {

Report::Report(nlohmann::json config) : config_(std::move(config)) {}

void Report::add(nlohmann::json record) { records_.push_back(std::move(record)); }

std::string Report::to_text() const {
  std::ostringstream os;
  auto now = std::chrono::system_clock::now();
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
  nlohmann::json header = {{"schema", kSchema}, {"created_unix", secs.count()}};
  if (elapsed_ms_ >= 0) header["elapsed_ms"] = elapsed_ms_;
  os << header.dump() << "\n";
  os << nlohmann::json{{"config", config_}}.dump() << "\n";
  for (const auto& r : records_) os << nlohmann::json{{"record", r}}.dump() << "\n";
  return os.str();
}

void Report::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file: " + path);
  out << to_text();
}

bool Report::same_below_header(const std::string& a, const std::string& b) {
  auto skip_header = [](const std::string& s) {
    size_t nl = s.find('\n');
    return nl == std::string::npos ? std::string() : s.substr(nl + 1);
  };
  return skip_header(a) == skip_header(b);
}

}  // namespace chevlab
