#include "whlattice/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace whl::cli {

using nlohmann::json;

namespace {

template <class T>
T get_as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type: " + v.dump());
  }
}

int get_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return v.get<int>();
}

double get_positive(const json& v, const std::string& key) {
  const double x = get_as<double>(v, key);
  if (!(x > 0)) throw ConfigError("config key '" + key + "' must be > 0");
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

KernelSpec kernel_from_json(const json& v) {
  if (v.is_string()) return parse_kernel_shorthand(v.get<std::string>());
  if (!v.is_object()) throw ConfigError("config key 'kernel' must be an object or a shorthand string");
  KernelSpec k;
  for (const auto& [key, val] : v.items()) {
    if (key == "family") {
      k.family = get_as<std::string>(val, "kernel.family");
    } else if (key == "dim") {
      k.dim = get_int(val, "kernel.dim");
    } else if (key == "params") {
      if (!val.is_object()) throw ConfigError("config key 'kernel.params' must be an object");
      for (const auto& [pk, pv] : val.items()) k.params[pk] = get_as<double>(pv, "kernel.params." + pk);
    } else {
      throw ConfigError("unknown config key 'kernel." + key + "'");
    }
  }
  return k;
}

void set_key(RunConfig& c, const std::string& key, const json& v) {
  auto& s = c.system;
  if (key == "kernel") c.kernel = kernel_from_json(v);
  else if (key == "halfspace") c.halfspace = get_as<std::string>(v, key);
  else if (key == "symbol_radius") s.symbol_radius = get_int(v, key);
  else if (key == "grid") s.grid = get_int(v, key);
  else if (key == "sample_budget") s.sample_budget = get_as<std::size_t>(v, key);
  else if (key == "positivity_floor") s.positivity_floor = get_positive(v, key);
  else if (key == "residual_tol") s.residual_tol = get_positive(v, key);
  else if (key == "leak_tol") s.leak_tol = get_positive(v, key);
  else if (key == "tail_tol") s.tail_tol = get_positive(v, key);
  else if (key == "trim_tol") s.trim_tol = get_positive(v, key);
  else if (key == "eval_radius") s.eval_radius = get_int(v, key);
  else if (key == "j") c.j = get_as<std::vector<int>>(v, key);
  else if (key == "x") c.x = get_as<std::vector<double>>(v, key);
  else if (key == "probes") c.probes = get_as<std::vector<int>>(v, key);
  else if (key == "window") c.window = get_int(v, key);
  else if (key == "buffer") c.buffer = get_int(v, key);
  else if (key == "semi") c.semi = get_as<bool>(v, key);
  else if (key == "data") c.data = get_as<std::string>(v, key);
  else if (key == "extension") c.extension = get_as<std::string>(v, key);
  else if (key == "out_dir") c.out_dir = get_as<std::string>(v, key);
  else if (key == "cache_dir") c.cache_dir = get_as<std::string>(v, key);
  else if (key == "use_cache") c.use_cache = get_as<bool>(v, key);
  else if (key == "emit_plot_data") c.emit_plot_data = get_as<bool>(v, key);
  else if (key == "timings") c.timings = get_as<bool>(v, key);
  else throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

KernelSpec parse_kernel_shorthand(const std::string& text) {
  KernelSpec k;
  const auto colon = text.find(':');
  k.family = text.substr(0, colon);
  if (colon == std::string::npos) return k;
  for (const auto& item : split(text.substr(colon + 1), ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("kernel parameter '" + item + "' is not name=value");
    const std::string name = item.substr(0, eq);
    double val = 0;
    try {
      val = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("kernel parameter '" + name + "' is not a number");
    }
    if (name == "dim" || name == "d") {
      if (val != std::floor(val)) throw ConfigError("kernel dimension must be an integer");
      k.dim = static_cast<int>(val);
    } else {
      k.params[name] = val;
    }
  }
  return k;
}

Kernel make_kernel(const KernelSpec& spec) {
  static const std::map<std::string, std::set<std::string>> allowed = {
      {"delta", {}},       {"gaussian", {"c"}}, {"matern", {"m"}},         {"gim", {"c", "m"}},
      {"bspline", {"n"}},  {"box_spline_222", {}}, {"polyharmonic", {"m"}}};
  const auto it = allowed.find(spec.family);
  if (it == allowed.end()) throw ConfigError("unknown kernel family '" + spec.family + "'");
  for (const auto& [name, v] : spec.params)
    if (!it->second.count(name)) throw ConfigError("kernel " + spec.family + " has no parameter '" + name + "'");
  for (const auto& name : it->second)
    if (!spec.params.count(name)) throw ConfigError("kernel " + spec.family + " needs parameter '" + name + "'");
  if (spec.dim < 1 || spec.dim > kMaxDim) throw ConfigError("kernel dimension must be in 1.." + std::to_string(kMaxDim));
  const auto p = [&](const char* n) { return spec.params.at(n); };
  try {
    if (spec.family == "delta") return Kernel::delta(spec.dim);
    if (spec.family == "gaussian") return Kernel::gaussian(spec.dim, p("c"));
    if (spec.family == "matern") return Kernel::matern(spec.dim, p("m"));
    if (spec.family == "gim") return Kernel::gim(spec.dim, p("c"), p("m"));
    if (spec.family == "polyharmonic") {
      if (p("m") != std::floor(p("m"))) throw ConfigError("polyharmonic order m must be an integer");
      return Kernel::polyharmonic(spec.dim, static_cast<int>(p("m")));
    }
    if (spec.family == "bspline") {
      if (spec.dim != 1) throw ConfigError("bspline is univariate (dim 1)");
      if (p("n") != std::floor(p("n"))) throw ConfigError("bspline order n must be an integer");
      return Kernel::bspline(static_cast<int>(p("n")));
    }
    if (spec.dim != 2) throw ConfigError("box_spline_222 lives in dim 2");
    return Kernel::box_spline_222();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

HalfSpace make_halfspace(const std::string& desc, int dim) {
  std::string d = desc;
  if (d.rfind("order:", 0) == 0) d = d.substr(6);
  const auto colon = d.find(':');
  const std::string kind = d.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : d.substr(colon + 1);
  if (kind == "coordinate") {
    int axis = dim;
    if (!rest.empty()) {
      if (rest.rfind("axis=", 0) != 0) throw ConfigError("coordinate half-space takes axis=K, got '" + rest + "'");
      try {
        axis = std::stoi(rest.substr(5));
      } catch (const std::exception&) {
        throw ConfigError("half-space axis is not an integer");
      }
    }
    if (axis < 1 || axis > dim)
      throw ConfigError("half-space axis " + std::to_string(axis) + " outside 1.." + std::to_string(dim));
    return HalfSpace::coordinate(dim, axis - 1);
  }
  if (kind == "lex") {
    if (rest.empty()) return HalfSpace::ordered(LinearOrder::lex(dim));
    std::vector<int> prio;
    for (const auto& s : split(rest, ',')) {
      try {
        prio.push_back(std::stoi(s) - 1);
      } catch (const std::exception&) {
        throw ConfigError("lex priority '" + s + "' is not an integer");
      }
    }
    auto sorted = prio;
    std::sort(sorted.begin(), sorted.end());
    bool perm = sorted.size() == static_cast<std::size_t>(dim);
    for (std::size_t a = 0; perm && a < sorted.size(); ++a) perm = sorted[a] == static_cast<int>(a);
    if (!perm) throw ConfigError("lex priority must be a permutation of 1.." + std::to_string(dim));
    return HalfSpace::ordered(LinearOrder::lex(prio));
  }
  if (kind == "graded_lex" && rest.empty()) return HalfSpace::ordered(LinearOrder::graded_lex(dim));
  throw ConfigError("unknown half-space '" + desc + "'");
}

void RunConfig::validate() const {
  system.validate();
  make_kernel(kernel);
  make_halfspace(halfspace, kernel.dim);
  if (!j.empty() && static_cast<int>(j.size()) != kernel.dim)
    throw ConfigError("j has " + std::to_string(j.size()) + " components, kernel dim is " + std::to_string(kernel.dim));
  if (!x.empty() && x.size() % static_cast<std::size_t>(kernel.dim))
    throw ConfigError("x must hold a multiple of dim coordinates");
  if (extension != "zero" && extension != "periodic") throw ConfigError("extension must be zero or periodic");
  if (window < -1 || buffer < -1) throw ConfigError("window and buffer must be >= 0");
  if (dense_buffer() > dense_window()) throw ConfigError("buffer exceeds the window radius");
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  for (const auto& [key, val] : doc.items()) set_key(c, key, val);
  return c;
}

void apply_overrides(RunConfig& cfg, const json& flags) {
  for (const auto& [key, val] : flags.items()) set_key(cfg, key, val);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw ConfigError(path + ":" + std::to_string(line) + ": " + e.what());
  }
  return parse_config(doc);
}

nlohmann::ordered_json echo(const RunConfig& c) {
  nlohmann::ordered_json k;
  k["family"] = c.kernel.family;
  k["params"] = nlohmann::ordered_json::object();
  for (const auto& [n, v] : c.kernel.params) k["params"][n] = v;
  k["dim"] = c.kernel.dim;
  nlohmann::ordered_json o;
  o["kernel"] = k;
  o["halfspace"] = make_halfspace(c.halfspace, c.kernel.dim).describe();
  o["symbol_radius"] = c.system.symbol_radius;
  o["grid"] = c.system.grid;
  o["sample_budget"] = c.system.sample_budget;
  o["positivity_floor"] = c.system.positivity_floor;
  o["residual_tol"] = c.system.residual_tol;
  o["leak_tol"] = c.system.leak_tol;
  o["tail_tol"] = c.system.tail_tol;
  o["trim_tol"] = c.system.trim_tol;
  o["eval_radius"] = c.system.eval_radius;
  if (!c.j.empty()) o["j"] = c.j;
  if (!c.x.empty()) o["x"] = c.x;
  if (!c.probes.empty()) o["probes"] = c.probes;
  o["window"] = c.dense_window();
  o["buffer"] = c.dense_buffer();
  if (!c.data.empty()) {
    o["data"] = c.data;
    o["extension"] = c.extension;
  }
  return o;
}

std::string cache_dir(const RunConfig& cfg) {
  if (const char* env = std::getenv("WHLATTICE_CACHE"); env && *env) return env;
  if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::string(xdg) + "/whlattice";
  if (const char* home = std::getenv("HOME"); home && *home) return std::string(home) + "/.cache/whlattice";
  return ".whlattice-cache";
}

}  // namespace whl::cli
