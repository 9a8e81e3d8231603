#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace brst {

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Directory of JSON results keyed by content hash. Writes go to a temporary
/// file in the same directory and are renamed into place.
class ResultCache {
public:
  explicit ResultCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }

  static std::string key(const nlohmann::json& request);

  std::optional<nlohmann::json> load(const std::string& key) const;
  void store(const std::string& key, const nlohmann::json& result) const;

private:
  std::filesystem::path path_for(const std::string& key) const;

  std::filesystem::path dir_;
};

}  // namespace brst
