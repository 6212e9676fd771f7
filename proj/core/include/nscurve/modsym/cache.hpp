#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "nscurve/modsym/space.hpp"
#include "nscurve/modsym/sparse.hpp"

namespace nscurve::modsym {

// Directory named by NSCURVE_CACHE_DIR, if set and non-empty.
std::optional<std::filesystem::path> cache_directory();

// On-disk Hecke matrix for (level, ell). The file carries an 8-byte magic,
// a format version, level, ell, rank, nnz, a fingerprint of the generator
// basis and an FNV-1a checksum; any mismatch reads as a miss.
std::optional<CsrMatrix> load_hecke(const std::filesystem::path& dir, const ManinSymbolSpace& space, std::uint32_t ell);
void store_hecke(const std::filesystem::path& dir, const ManinSymbolSpace& space, std::uint32_t ell, const CsrMatrix& m);
std::filesystem::path hecke_cache_file(const std::filesystem::path& dir, std::uint32_t level, std::uint32_t ell);

// hecke_operator(space, ell), going through the cache directory when one is configured.
CsrMatrix cached_hecke_operator(const ManinSymbolSpace& space, std::uint32_t ell);

}  // namespace nscurve::modsym
