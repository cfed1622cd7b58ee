#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace tf {

/// Flat numeric report: stable labels -> values/flags, serialized to JSON.
/// The numeric payload is deterministic; wall time lives outside of it.
struct AnalysisReport {
  std::string tool = "twistfreq";
  std::string version;
  std::string command;
  std::map<std::string, double> values;
  std::map<std::string, bool> flags;
  double wall_time_s = 0;

  void set(const std::string& label, double v) { values[label] = v; }
  void set_flag(const std::string& label, bool v) { flags[label] = v; }
  bool all_pass() const {
    for (const auto& [k, v] : flags)
      if (!v) return false;
    return true;
  }

  std::string to_json() const;
  /// Atomic write: temp file in the target directory, then rename.
  void write(const std::filesystem::path& path) const;
};

std::string tool_version();

}  // namespace tf
