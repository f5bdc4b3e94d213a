#include "isobar3/cli/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <zlib.h>

#include "isobar3/coeff_io.hpp"
#include "isobar3/error.hpp"

namespace isobar3::cli {
namespace {

constexpr const char* kModule = "cli_orchestrator";
constexpr const char* kManifestName = "manifest.json";

std::string hex32(std::uint32_t v) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

nlohmann::ordered_json read_manifest(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return {{"files", nlohmann::ordered_json::object()}};
  const auto bytes = coeff::read_file(path);
  auto j = nlohmann::ordered_json::parse(bytes.begin(), bytes.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("files") || !j["files"].is_object())
    throw Error(Errc::integrity_error, kModule, "malformed manifest " + path.string());
  return j;
}

}  // namespace

std::uint32_t crc32_of(std::span<const unsigned char> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::size_t off = 0;
  while (off < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - off, 1u << 30));
    crc = crc32(crc, bytes.data() + off, chunk);
    off += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

Manifest::Manifest(std::filesystem::path dir) : dir_(std::move(dir)) {}

void Manifest::store(const std::string& name, std::span<const unsigned char> bytes) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(Errc::io_error, kModule, "cannot create " + dir_.string() + ": " + ec.message());
  auto j = read_manifest(dir_ / kManifestName);
  coeff::write_file_atomic(dir_ / name, bytes);
  j["files"][name] = {{"crc32", hex32(crc32_of(bytes))}, {"bytes", bytes.size()}};
  coeff::write_file_atomic(dir_ / kManifestName, j.dump(2) + "\n");
}

void Manifest::store(const std::string& name, const std::string& text) {
  store(name, std::span(reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

bool Manifest::has(const std::string& name) const {
  std::error_code ec;
  if (!std::filesystem::exists(dir_ / name, ec)) return false;
  return read_manifest(dir_ / kManifestName)["files"].contains(name);
}

std::vector<unsigned char> Manifest::load(const std::string& name) const {
  const auto j = read_manifest(dir_ / kManifestName);
  if (!j["files"].contains(name))
    throw Error(Errc::integrity_error, kModule, "no checksum recorded for " + (dir_ / name).string());
  const auto& entry = j["files"][name];
  auto bytes = coeff::read_file(dir_ / name);
  const std::string want = entry.value("crc32", std::string());
  const std::string got = hex32(crc32_of(bytes));
  if (entry.value("bytes", std::uint64_t(0)) != bytes.size() || want != got)
    throw Error(Errc::integrity_error, kModule,
                "checksum mismatch for " + (dir_ / name).string() + " (recorded " + want + ", found " + got + ")");
  return bytes;
}

}  // namespace isobar3::cli
