#include "emograph/manifest.hpp"

#include <cstdio>
#include <fstream>

#include "emograph/errors.hpp"
#include "emograph/version.hpp"

namespace emograph {

void RunManifest::add(std::string key, std::string value) {
  entries.emplace_back(std::move(key), std::move(value));
}

void RunManifest::add_input(const std::string& name, const std::filesystem::path& path) {
  add("input." + name + ".path", path.string());
  add("input." + name + ".fnv1a64", fnv1a64_file(path));
}

void RunManifest::add_output(const std::string& name, const std::filesystem::path& path) {
  add("output." + name, path.string());
}

std::string RunManifest::to_text() const {
  std::string out;
  out += "subcommand=" + subcommand + "\n";
  out += "version=" + std::string(kVersion) + "\n";
  for (const auto& [key, value] : entries) {
    out += key + "=" + value + "\n";
  }
  out += "duration_ms=" + std::to_string(duration_ms) + "\n";
  return out;
}

void RunManifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw IoError("cannot open for writing: " + path.string());
  out << to_text();
  if (!out.good()) throw IoError("write failed: " + path.string());
}

std::string fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw FileNotFound(path.string());
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  char buf[65536];
  while (in.read(buf, sizeof buf), in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001B3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

}  // namespace emograph
