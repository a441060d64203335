#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "helmscat/scatmat.hpp"

namespace helmscat {

/// 64-bit FNV-1a hash.
std::uint64_t fnv1a(const std::string& text);

/// Shares scattering factors between scatterers that differ only by a
/// translation. With a directory, factors are also persisted as binary files
/// named by the hash of their key; the full key is stored and verified on load.
class OperatorCache {
 public:
  explicit OperatorCache(std::string directory = {});

  std::shared_ptr<const ScatteringFactors> get_or_build(const std::string& key,
                                                        const std::function<ScatteringFactors()>& build);

  int builds() const { return builds_; }
  int memory_hits() const { return memory_hits_; }
  int disk_hits() const { return disk_hits_; }

 private:
  std::string path_for(const std::string& key) const;

  std::string directory_;
  std::map<std::string, std::shared_ptr<const ScatteringFactors>> entries_;
  int builds_ = 0;
  int memory_hits_ = 0;
  int disk_hits_ = 0;
};

void save_factors(const std::string& path, const std::string& key, const ScatteringFactors& f);
/// Returns false if the file is missing or was written for another key.
bool load_factors(const std::string& path, const std::string& key, ScatteringFactors& f);

/// Discretizes and skeletonizes every body; copies of one shape share factors.
std::vector<ScattererOperator> build_operators(const std::vector<std::shared_ptr<const Body>>& bodies,
                                               const std::vector<DiscretizationSpec>& specs,
                                               const Kernel& kernel, const OperatorSettings& settings,
                                               OperatorCache& cache);

}  // namespace helmscat
