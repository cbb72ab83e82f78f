#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace fsieve {

// FNV-1a, 64-bit. Content fingerprint for run manifests; not cryptographic.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// Throws ConfigError when the file cannot be read.
std::string read_file(const std::string& path);

// Write-to-temp + atomic rename; no partial files are ever left at `path`.
void atomic_write_file(const std::string& path, std::string_view content);

struct FileStamp {
  std::string path;
  std::string fnv1a64;
};

// A run manifest records everything needed to reproduce a run byte-for-byte:
// the subcommand, its full configuration, and content hashes of every input
// and output. No timestamps or host details, so re-runs produce identical
// manifests.
nlohmann::ordered_json make_manifest(const std::string& command,
                                     const nlohmann::ordered_json& config,
                                     const std::vector<FileStamp>& inputs,
                                     const std::vector<FileStamp>& outputs);

}  // namespace fsieve
