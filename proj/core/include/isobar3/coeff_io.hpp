#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isobar3/coeff_engine.hpp"

namespace isobar3::coeff {

// Binary cache layout (little-endian):
//   "IB3\0" | u32 version | u32 weight | u64 N | N x binary64 lambda(1..N)
inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr std::size_t kCacheHeaderBytes = 20;

struct CacheHeader {
  std::uint32_t version = kCacheVersion;
  std::uint32_t weight = 0;
  std::uint64_t n = 0;
};

std::vector<unsigned char> encode_cache(const LambdaTable& table);
LambdaTable decode_cache(std::span<const unsigned char> bytes);

// Returns nullopt when the file is missing or not an IB3 file.
std::optional<CacheHeader> read_cache_header(const std::filesystem::path& path);
void write_cache(const std::filesystem::path& path, const LambdaTable& table);
LambdaTable read_cache(const std::filesystem::path& path);

// Golden text file: one "n<TAB>a(n)" line per n = 1..limit.
std::string format_golden_tau(const TauTable& tau, std::size_t limit = 10'000);
void write_golden_tau(const std::filesystem::path& path, const TauTable& tau, std::size_t limit = 10'000);
// Reads n = 1..N consecutively; the source of coefficients for forms other than Delta.
TauTable read_golden_tau(const std::filesystem::path& path, const CuspFormSpec& spec);

// Writes to a sibling temporary and renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const unsigned char> bytes);
void write_file_atomic(const std::filesystem::path& path, const std::string& text);
std::vector<unsigned char> read_file(const std::filesystem::path& path);

}  // namespace isobar3::coeff
