#include "isobar3/coeff_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "isobar3/error.hpp"

namespace isobar3::coeff {
namespace {

constexpr const char* kModule = "coeff_io";
constexpr unsigned char kMagic[4] = {'I', 'B', '3', '\0'};

void put_le(std::vector<unsigned char>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const unsigned char> in, std::size_t offset, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t(in[offset + i]) << (8 * i);
  return v;
}

std::optional<CacheHeader> parse_header(std::span<const unsigned char> bytes) {
  if (bytes.size() < kCacheHeaderBytes || std::memcmp(bytes.data(), kMagic, 4) != 0) return std::nullopt;
  CacheHeader h;
  h.version = static_cast<std::uint32_t>(get_le(bytes, 4, 4));
  h.weight = static_cast<std::uint32_t>(get_le(bytes, 8, 4));
  h.n = get_le(bytes, 12, 8);
  return h;
}

}  // namespace

std::vector<unsigned char> encode_cache(const LambdaTable& table) {
  std::vector<unsigned char> out;
  out.reserve(kCacheHeaderBytes + 8 * table.size());
  for (unsigned char c : kMagic) out.push_back(c);
  put_le(out, kCacheVersion, 4);
  put_le(out, static_cast<std::uint32_t>(table.weight()), 4);
  put_le(out, table.size(), 8);
  for (double v : table.values()) put_le(out, std::bit_cast<std::uint64_t>(v), 8);
  return out;
}

LambdaTable decode_cache(std::span<const unsigned char> bytes) {
  const auto header = parse_header(bytes);
  if (!header) throw Error(Errc::integrity_error, kModule, "not an IB3 coefficient cache");
  if (header->version != kCacheVersion)
    throw Error(Errc::integrity_error, kModule, "unsupported cache version " + std::to_string(header->version));
  if (bytes.size() != kCacheHeaderBytes + 8 * header->n)
    throw Error(Errc::integrity_error, kModule, "cache length does not match its header");
  std::vector<double> values(header->n);
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = std::bit_cast<double>(get_le(bytes, kCacheHeaderBytes + 8 * i, 8));
  return LambdaTable(static_cast<int>(header->weight), std::move(values));
}

std::optional<CacheHeader> read_cache_header(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  unsigned char buf[kCacheHeaderBytes];
  in.read(reinterpret_cast<char*>(buf), sizeof buf);
  if (in.gcount() != static_cast<std::streamsize>(sizeof buf)) return std::nullopt;
  return parse_header(buf);
}

void write_cache(const std::filesystem::path& path, const LambdaTable& table) {
  write_file_atomic(path, encode_cache(table));
}

LambdaTable read_cache(const std::filesystem::path& path) { return decode_cache(read_file(path)); }

std::string format_golden_tau(const TauTable& tau, std::size_t limit) {
  limit = std::min(limit, tau.size());
  std::vector<mpz_class> values;
  tau.segment(1, limit, values);
  std::string out;
  for (std::size_t n = 1; n <= limit; ++n) {
    out += std::to_string(n);
    out += '\t';
    out += values[n - 1].get_str();
    out += '\n';
  }
  return out;
}

void write_golden_tau(const std::filesystem::path& path, const TauTable& tau, std::size_t limit) {
  write_file_atomic(path, format_golden_tau(tau, limit));
}

TauTable read_golden_tau(const std::filesystem::path& path, const CuspFormSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, kModule, "cannot open " + path.string());
  std::vector<mpz_class> values;
  std::string line;
  std::size_t expected = 1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error(Errc::integrity_error, kModule, "missing TAB in line " + std::to_string(expected));
    std::size_t n = 0;
    try {
      n = std::stoull(line.substr(0, tab));
    } catch (const std::exception&) {
      throw Error(Errc::integrity_error, kModule, "bad index in line " + std::to_string(expected));
    }
    if (n != expected) throw Error(Errc::integrity_error, kModule, "expected n=" + std::to_string(expected));
    mpz_class v;
    if (v.set_str(line.substr(tab + 1), 10) != 0)
      throw Error(Errc::integrity_error, kModule, "bad coefficient at n=" + std::to_string(n));
    values.push_back(std::move(v));
    ++expected;
  }
  return TauTable::from_integers(spec, values);
}

void write_file_atomic(const std::filesystem::path& path, std::span<const unsigned char> bytes) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, kModule, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::io_error, kModule, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::io_error, kModule, "cannot rename onto " + path.string() + ": " + ec.message());
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  write_file_atomic(path, std::span(reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, kModule, "cannot open " + path.string());
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

}  // namespace isobar3::coeff
