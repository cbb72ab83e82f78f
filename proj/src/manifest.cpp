#include "fsieve/manifest.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fsieve/errors.hpp"

namespace fsieve {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::string fnv1a64_hex(std::string_view bytes) {
  char buffer[19];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buffer;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream content;
  content << in.rdbuf();
  return content.str();
}

void atomic_write_file(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path() && !target.parent_path().empty()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write to: " + temp.string());
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) {
      std::error_code ec;
      fs::remove(temp, ec);
      throw ConfigError("short write to: " + temp.string());
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw ConfigError("cannot move output into place: " + path);
  }
}

nlohmann::ordered_json make_manifest(const std::string& command,
                                     const nlohmann::ordered_json& config,
                                     const std::vector<FileStamp>& inputs,
                                     const std::vector<FileStamp>& outputs) {
  nlohmann::ordered_json manifest;
  manifest["tool"] = "failure-sieve";
  manifest["version"] = "0.1.0";
  manifest["command"] = command;
  manifest["config"] = config;
  const auto stamp_array = [](const std::vector<FileStamp>& stamps) {
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const auto& stamp : stamps) {
      array.push_back({{"path", stamp.path}, {"fnv1a64", stamp.fnv1a64}});
    }
    return array;
  };
  manifest["inputs"] = stamp_array(inputs);
  manifest["outputs"] = stamp_array(outputs);
  return manifest;
}

}  // namespace fsieve
