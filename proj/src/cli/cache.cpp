#include "whlattice/cli/cache.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "whlattice/cli/report.hpp"
#include "whlattice/semicardinal.hpp"

namespace whl::cli {

namespace fs = std::filesystem;

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string cache_key(const Kernel& k, const HalfSpace& H, const SystemOptions& o) {
  std::ostringstream s;
  s << "v1|" << k.describe() << "|" << H.describe() << "|N=" << o.symbol_radius << "|M=" << o.grid
    << "|budget=" << o.sample_budget << "|pos=" << fmt17(o.positivity_floor) << "|res=" << fmt17(o.residual_tol)
    << "|leak=" << fmt17(o.leak_tol) << "|trim=" << fmt17(o.trim_tol);
  return fnv1a_hex(s.str());
}

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::optional<WienerHopfFactor> FactorCache::load(const std::string& key, const HalfSpace& H,
                                                  const TorusGrid& sigma_values, double residual_tol) const {
  const fs::path side = fs::path(dir_) / (key + ".json"), csv = fs::path(dir_) / (key + ".gamma.csv");
  if (!fs::exists(side) || !fs::exists(csv)) return std::nullopt;
  try {
    const auto meta = nlohmann::json::parse(slurp(side));
    if (meta.at("key") != key || meta.at("halfspace") != H.describe() || meta.at("grid") != sigma_values.points())
      return std::nullopt;
    WienerHopfFactor f{H, from_csv(slurp(csv)), sigma_values.points()};
    const int radius = meta.at("radius").get<int>();
    if (f.gamma.radius() > radius) return std::nullopt;
    f.gamma = f.gamma.resized(radius);
    f.support_leak = meta.at("support_leak");
    f.imag_residue = meta.at("imag_residue");
    f.trim_tail = meta.at("trim_tail");
    f.lambda0 = meta.at("lambda0");
    f.omega_wiener = meta.at("omega_wiener");
    const double stored = meta.at("residual");
    f.factorization_residual = verify_factorization(sigma_values, f).residual;
    if (!(stored <= residual_tol) || std::abs(f.factorization_residual - stored) > 1e-12) return std::nullopt;
    return f;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries count as misses
  }
}

void FactorCache::store(const std::string& key, const WienerHopfFactor& f, const std::string& kernel_desc) const {
  nlohmann::ordered_json meta;
  meta["key"] = key;
  meta["kernel"] = kernel_desc;
  meta["halfspace"] = f.halfspace.describe();
  meta["grid"] = f.grid;
  meta["radius"] = f.gamma.radius();
  meta["residual"] = f.factorization_residual;
  meta["support_leak"] = f.support_leak;
  meta["imag_residue"] = f.imag_residue;
  meta["trim_tail"] = f.trim_tail;
  meta["lambda0"] = f.lambda0;
  meta["omega_wiener"] = f.omega_wiener;
  write_atomic(fs::path(dir_) / (key + ".gamma.csv"), to_csv(f.gamma));
  write_atomic(fs::path(dir_) / (key + ".json"), meta.dump(2) + "\n");
}

std::vector<std::string> FactorCache::keys() const {
  std::vector<std::string> out;
  if (!fs::is_directory(dir_)) return out;
  for (const auto& e : fs::directory_iterator(dir_)) {
    const auto name = e.path().filename().string();
    if (e.path().extension() == ".json" && name.size() == 21) out.push_back(name.substr(0, 16));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t FactorCache::clear() const {
  std::size_t n = 0;
  for (const auto& k : keys()) {
    n += fs::remove(fs::path(dir_) / (k + ".json"));
    fs::remove(fs::path(dir_) / (k + ".gamma.csv"));
  }
  return n;
}

WienerHopfFactor cached_factor(const KernelSymbol& ks, const HalfSpace& H, const SystemOptions& opt,
                               const FactorCache* cache, bool& hit) {
  hit = false;
  const std::string key = cache ? cache_key(ks.kernel, H, opt) : "";
  if (cache)
    if (auto f = cache->load(key, H, ks.values, opt.residual_tol)) {
      hit = true;
      return *f;
    }
  auto f = factorize(ks.values, H, factor_options(opt));
  if (cache) cache->store(key, f, ks.kernel.describe());
  return f;
}

}  // namespace whl::cli
