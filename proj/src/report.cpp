#include "twistfreq/report.hpp"

#include <fstream>

#include <json.hpp>

namespace tf {

std::string tool_version() { return "0.1.0"; }

std::string AnalysisReport::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = tool;
  j["version"] = version.empty() ? tool_version() : version;
  j["command"] = command;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  for (const auto& [k, v] : values) results[k] = v;
  for (const auto& [k, v] : flags) results[k] = v;
  j["results"] = results;
  j["pass"] = all_pass();
  j["wall_time_s"] = wall_time_s;
  return j.dump(2);
}

void AnalysisReport::write(const std::filesystem::path& path) const {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << to_json() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tf
