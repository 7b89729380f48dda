#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace emograph {

/// Record of one CLI run: subcommand, resolved configuration, input file
/// digests and the seed. Two runs with identical inputs and seed produce
/// identical manifests except for the duration line (kept last).
struct RunManifest {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> entries;  // resolved config, in order
  std::int64_t duration_ms = 0;

  void add(std::string key, std::string value);
  void add_input(const std::string& name, const std::filesystem::path& path);
  void add_output(const std::string& name, const std::filesystem::path& path);

  /// key=value lines; subcommand and version first, duration_ms last.
  std::string to_text() const;

  void write(const std::filesystem::path& path) const;
};

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string fnv1a64_file(const std::filesystem::path& path);

}  // namespace emograph
