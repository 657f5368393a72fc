#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace seshadri {

/// Append-only JSON-lines memo of computed results. Each line is
/// {"key", "value", "version", "timestamp"}; writers take an exclusive
/// flock on the file, readers a shared one.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path path);

  /// The --cache flag if non-empty, else $SESHADRI_CACHE, else nothing.
  static std::optional<std::filesystem::path> resolve(const std::string& flag);

  const std::filesystem::path& path() const noexcept { return path_; }

  /// Values stored under `key` by this toolkit version, oldest first.
  std::vector<nlohmann::json> lookup(const std::string& key) const;

  void append(const std::string& key, const nlohmann::json& value) const;

 private:
  std::filesystem::path path_;
};

}  // namespace seshadri
