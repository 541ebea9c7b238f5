#include "whlattice/cli/report.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace whl::cli {

bool Report::pass() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

ojson Report::to_json(bool with_timings) const {
  ojson out;
  if (!config_.is_null()) out["config"] = config_;
  for (const auto& [k, v] : extra_.items()) out[k] = v;
  out["checks"] = ojson::array();
  for (const auto& c : checks_) {
    ojson j;
    j["check"] = c.check;
    j["kernel"] = c.kernel;
    j["halfspace"] = c.halfspace;
    j["value"] = c.value;
    j["bound"] = c.bound;
    j["pass"] = c.pass;
    if (!c.details.empty()) j["details"] = c.details;
    out["checks"].push_back(std::move(j));
  }
  out["pass"] = pass();
  if (with_timings) out["timings"] = timings_;
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace whl::cli
