#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace isobar3::cli {

std::uint32_t crc32_of(std::span<const unsigned char> bytes);

// manifest.json next to the cached files: {"files": {name: {"crc32": "...", "bytes": n}}}.
class Manifest {
 public:
  explicit Manifest(std::filesystem::path dir);

  // Writes `bytes` atomically under dir and records its checksum.
  void store(const std::string& name, std::span<const unsigned char> bytes);
  void store(const std::string& name, const std::string& text);
  // Reads the file and checks it against the recorded checksum.
  // Throws IntegrityError on mismatch or a missing entry, IoError when unreadable.
  std::vector<unsigned char> load(const std::string& name) const;
  bool has(const std::string& name) const;

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace isobar3::cli
