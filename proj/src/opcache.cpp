#include "helmscat/opcache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace helmscat {

namespace {

constexpr char kMagic[4] = {'H', 'S', 'O', 'P'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw Error("operator cache: truncated file");
  return v;
}

void put_string(std::ostream& os, const std::string& s) {
  put<std::uint64_t>(os, s.size());
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& is) {
  const auto n = get<std::uint64_t>(is);
  if (n > (1u << 20)) throw Error("operator cache: corrupt key length");
  std::string s(n, '\0');
  is.read(s.data(), static_cast<std::streamsize>(n));
  if (!is) throw Error("operator cache: truncated file");
  return s;
}

template <typename M>
void put_matrix(std::ostream& os, const M& m) {
  put<std::int64_t>(os, m.rows());
  put<std::int64_t>(os, m.cols());
  os.write(reinterpret_cast<const char*>(m.data()),
           static_cast<std::streamsize>(sizeof(typename M::Scalar) * static_cast<std::size_t>(m.size())));
}

template <typename M>
M get_matrix(std::istream& is) {
  const auto rows = get<std::int64_t>(is);
  const auto cols = get<std::int64_t>(is);
  if (rows < 0 || cols < 0 || rows * cols > (std::int64_t{1} << 31)) throw Error("operator cache: corrupt shape");
  M m(rows, cols);
  is.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(sizeof(typename M::Scalar) * static_cast<std::size_t>(m.size())));
  if (!is) throw Error("operator cache: truncated file");
  return m;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void save_factors(const std::string& path, const std::string& key, const ScatteringFactors& f) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("operator cache: cannot write " + tmp);
    os.write(kMagic, 4);
    put(os, kVersion);
    put_string(os, key);
    put_matrix(os, f.local.A);
    const auto& p = f.local.pinv;
    put(os, p.rel_cutoff());
    put_matrix(os, p.left());
    put_matrix(os, RealVector(p.retained()));
    put_matrix(os, p.right());
    put_matrix(os, RealVector(p.singular_values()));
    put<std::uint64_t>(os, f.skel.skeleton.size());
    for (Index i : f.skel.skeleton) put<std::int64_t>(os, i);
    put_matrix(os, f.skel.Z);
    put(os, f.skel.eps);
    put(os, f.skel.residual);
    put_matrix(os, f.C);
    put_matrix(os, f.ZC);
    put_matrix(os, f.S);
    put(os, f.translation_mismatch);
    if (!os) throw Error("operator cache: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

bool load_factors(const std::string& path, const std::string& key, ScatteringFactors& f) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;
  char magic[4];
  is.read(magic, 4);
  if (!is || std::string(magic, 4) != std::string(kMagic, 4)) return false;
  if (get<std::uint32_t>(is) != kVersion) return false;
  if (get_string(is) != key) return false;
  f.local.A = get_matrix<ComplexMatrix>(is);
  const auto cutoff = get<double>(is);
  auto u = get_matrix<ComplexMatrix>(is);
  RealVector s = get_matrix<Eigen::MatrixXd>(is);
  auto v = get_matrix<ComplexMatrix>(is);
  RealVector all_s = get_matrix<Eigen::MatrixXd>(is);
  f.local.pinv = PinvOperator::from_factors(std::move(u), std::move(s), std::move(v), std::move(all_s), cutoff);
  const auto k = get<std::uint64_t>(is);
  f.skel.skeleton.resize(k);
  for (auto& i : f.skel.skeleton) i = get<std::int64_t>(is);
  f.skel.Z = get_matrix<ComplexMatrix>(is);
  f.skel.U = f.skel.Z.conjugate();
  f.skel.rank = static_cast<Index>(k);
  f.skel.eps = get<double>(is);
  f.skel.residual = get<double>(is);
  f.C = get_matrix<ComplexMatrix>(is);
  f.ZC = get_matrix<ComplexMatrix>(is);
  f.S = get_matrix<ComplexMatrix>(is);
  f.translation_mismatch = get<double>(is);
  return true;
}

OperatorCache::OperatorCache(std::string directory) : directory_(std::move(directory)) {
  if (!directory_.empty()) std::filesystem::create_directories(directory_);
}

std::string OperatorCache::path_for(const std::string& key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.hsop", static_cast<unsigned long long>(fnv1a(key)));
  return (std::filesystem::path(directory_) / name).string();
}

std::shared_ptr<const ScatteringFactors> OperatorCache::get_or_build(
    const std::string& key, const std::function<ScatteringFactors()>& build) {
  if (auto it = entries_.find(key); it != entries_.end()) {
    ++memory_hits_;
    return it->second;
  }
  std::shared_ptr<const ScatteringFactors> entry;
  if (!directory_.empty()) {
    auto loaded = std::make_shared<ScatteringFactors>();
    if (load_factors(path_for(key), key, *loaded)) {
      ++disk_hits_;
      entry = std::move(loaded);
    }
  }
  if (!entry) {
    auto built = std::make_shared<ScatteringFactors>(build());
    ++builds_;
    if (!directory_.empty()) save_factors(path_for(key), key, *built);
    entry = std::move(built);
  }
  entries_.emplace(key, entry);
  return entry;
}

std::vector<ScattererOperator> build_operators(const std::vector<std::shared_ptr<const Body>>& bodies,
                                               const std::vector<DiscretizationSpec>& specs,
                                               const Kernel& kernel, const OperatorSettings& settings,
                                               OperatorCache& cache) {
  if (bodies.size() != specs.size()) throw PreconditionError("build_operators: one spec per body required");
  std::vector<ScattererOperator> ops;
  ops.reserve(bodies.size());
  for (std::size_t t = 0; t < bodies.size(); ++t) {
    if (bodies[t]->dim() != kernel.dim()) throw PreconditionError("build_operators: dimension mismatch");
    Discretization disc = bodies[t]->discretize(specs[t]);
    ProxySurface proxy = build_proxy(disc, settings.proxy_factor, settings.proxy_points);
    const std::string key = operator_key(*bodies[t], specs[t], kernel, settings);
    auto factors = cache.get_or_build(key, [&] { return build_scattering_factors(disc, proxy, kernel, settings); });
    ops.push_back(make_operator(bodies[t], specs[t], proxy, std::move(disc), std::move(factors)));
  }
  return ops;
}

}  // namespace helmscat
