#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whlattice/system.hpp"
#include "whlattice/wienerhopf.hpp"

namespace whl::cli {

std::string fnv1a_hex(const std::string& text);
std::string cache_key(const Kernel& k, const HalfSpace& H, const SystemOptions& opt);

// gamma as <key>.gamma.csv plus a <key>.json sidecar; the sidecar is written
// last, so a present sidecar marks a complete entry
class FactorCache {
 public:
  explicit FactorCache(std::string dir) : dir_(std::move(dir)) {}
  const std::string& dir() const noexcept { return dir_; }

  // nullopt on a miss or when the stored residual does not reproduce
  std::optional<WienerHopfFactor> load(const std::string& key, const HalfSpace& H, const TorusGrid& sigma_values,
                                       double residual_tol) const;
  void store(const std::string& key, const WienerHopfFactor& f, const std::string& kernel_desc) const;
  std::vector<std::string> keys() const;
  std::size_t clear() const;

 private:
  std::string dir_;
};

// factorize through the cache; `hit` reports whether the stored factor was used
WienerHopfFactor cached_factor(const KernelSymbol& ks, const HalfSpace& H, const SystemOptions& opt,
                               const FactorCache* cache, bool& hit);

}  // namespace whl::cli
