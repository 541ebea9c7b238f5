#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace whl::cli {

using ojson = nlohmann::ordered_json;

struct Check {
  std::string check;
  std::string kernel;
  std::string halfspace;
  double value = 0;
  double bound = 0;
  bool pass = false;
  ojson details = ojson::object();
};

class Report {
 public:
  void add(Check c) { checks_.push_back(std::move(c)); }
  const std::vector<Check>& checks() const noexcept { return checks_; }
  bool pass() const;

  void set_config(ojson cfg) { config_ = std::move(cfg); }
  void set(const std::string& key, ojson v) { extra_[key] = std::move(v); }
  void time(const std::string& phase, double seconds) { timings_[phase] = seconds; }

  // key order: config, extra fields, checks, pass, timings (only if asked)
  ojson to_json(bool with_timings) const;

 private:
  std::vector<Check> checks_;
  ojson config_;
  ojson extra_ = ojson::object();
  ojson timings_ = ojson::object();
};

// write to a sibling temp file, then rename over the target
void write_atomic(const std::filesystem::path& path, const std::string& text);
// 17 significant digits, '.' separator
std::string fmt17(double v);

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace whl::cli
