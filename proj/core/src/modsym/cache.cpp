#include "nscurve/modsym/cache.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "nscurve/modsym/hecke.hpp"

namespace nscurve::modsym {

namespace {

constexpr char kMagic[8] = {'N', 'S', 'M', 'S', 'H', 'K', '0', '1'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t fnv1a(const unsigned char* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t fingerprint(const ManinSymbolSpace& space) {
  std::vector<std::uint32_t> data{space.level(), space.rank(), space.cusp_generator()};
  for (std::uint32_t i = 0; i < space.rank(); ++i) data.push_back(space.generator_symbol(i));
  return fnv1a(reinterpret_cast<const unsigned char*>(data.data()), data.size() * sizeof(std::uint32_t));
}

class Writer {
 public:
  template <typename T>
  void put(const T& v) {
    const auto* b = reinterpret_cast<const unsigned char*>(&v);
    bytes.insert(bytes.end(), b, b + sizeof(T));
  }
  template <typename T>
  void put_all(const std::vector<T>& v) {
    const auto* b = reinterpret_cast<const unsigned char*>(v.data());
    bytes.insert(bytes.end(), b, b + v.size() * sizeof(T));
  }
  std::vector<unsigned char> bytes;
};

class Reader {
 public:
  explicit Reader(const std::vector<unsigned char>& b) : bytes_(b) {}
  template <typename T>
  bool get(T& v) {
    if (pos_ + sizeof(T) > bytes_.size()) return false;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return true;
  }
  template <typename T>
  bool get_all(std::vector<T>& v, std::uint64_t n) {
    if (n > (bytes_.size() - pos_) / sizeof(T)) return false;
    v.resize(n);
    std::memcpy(v.data(), bytes_.data() + pos_, n * sizeof(T));
    pos_ += n * sizeof(T);
    return true;
  }
  std::size_t position() const { return pos_; }

 private:
  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<std::filesystem::path> cache_directory() {
  const char* env = std::getenv("NSCURVE_CACHE_DIR");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return std::filesystem::path(env);
}

std::filesystem::path hecke_cache_file(const std::filesystem::path& dir, std::uint32_t level, std::uint32_t ell) {
  return dir / ("hecke_" + std::to_string(level) + "_" + std::to_string(ell) + ".bin");
}

std::optional<CsrMatrix> load_hecke(const std::filesystem::path& dir, const ManinSymbolSpace& space, std::uint32_t ell) {
  std::ifstream in(hecke_cache_file(dir, space.level(), ell), std::ios::binary);
  if (!in) return std::nullopt;
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < sizeof(kMagic) + sizeof(std::uint64_t)) return std::nullopt;
  const std::size_t body = bytes.size() - sizeof(std::uint64_t);
  std::uint64_t stored_sum = 0;
  std::memcpy(&stored_sum, bytes.data() + body, sizeof(stored_sum));
  if (fnv1a(bytes.data(), body) != stored_sum) return std::nullopt;

  Reader r(bytes);
  char magic[8];
  for (char& c : magic)
    if (!r.get(c)) return std::nullopt;
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) return std::nullopt;
  std::uint32_t version = 0, level = 0, stored_ell = 0, rank = 0;
  std::uint64_t nnz = 0, fp = 0;
  if (!r.get(version) || !r.get(level) || !r.get(stored_ell) || !r.get(rank) || !r.get(nnz) || !r.get(fp))
    return std::nullopt;
  if (version != kVersion || level != space.level() || stored_ell != ell || rank != space.rank() ||
      fp != fingerprint(space))
    return std::nullopt;
  CsrMatrix m;
  m.rows = m.cols = rank;
  if (!r.get_all(m.row_ptr, static_cast<std::uint64_t>(rank) + 1) || !r.get_all(m.col, nnz) || !r.get_all(m.val, nnz))
    return std::nullopt;
  if (r.position() != body) return std::nullopt;
  // structural sanity
  if (m.row_ptr.front() != 0 || m.row_ptr.back() != nnz) return std::nullopt;
  for (std::uint32_t i = 0; i < rank; ++i)
    if (m.row_ptr[i] > m.row_ptr[i + 1]) return std::nullopt;
  for (auto c : m.col)
    if (c >= rank) return std::nullopt;
  return m;
}

void store_hecke(const std::filesystem::path& dir, const ManinSymbolSpace& space, std::uint32_t ell, const CsrMatrix& m) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  Writer w;
  for (char c : kMagic) w.put(c);
  w.put(kVersion);
  w.put(space.level());
  w.put(ell);
  w.put(space.rank());
  w.put(static_cast<std::uint64_t>(m.nnz()));
  w.put(fingerprint(space));
  w.put_all(m.row_ptr);
  w.put_all(m.col);
  w.put_all(m.val);
  w.put(fnv1a(w.bytes.data(), w.bytes.size()));
  const auto target = hecke_cache_file(dir, space.level(), ell);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out.write(reinterpret_cast<const char*>(w.bytes.data()), static_cast<std::streamsize>(w.bytes.size()));
    if (!out) return;
  }
  std::filesystem::rename(tmp, target, ec);
}

CsrMatrix cached_hecke_operator(const ManinSymbolSpace& space, std::uint32_t ell) {
  const auto dir = cache_directory();
  if (!dir) return hecke_operator(space, ell);
  if (auto hit = load_hecke(*dir, space, ell)) return *std::move(hit);
  CsrMatrix m = hecke_operator(space, ell);
  store_hecke(*dir, space, ell, m);
  return m;
}

}  // namespace nscurve::modsym
