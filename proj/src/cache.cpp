#include "seshadri/cache.hpp"

#include "seshadri/error.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>

namespace seshadri {

namespace {

class FileLock {
 public:
  FileLock(const std::filesystem::path& path, int flags, int operation) {
    fd_ = ::open(path.c_str(), flags, 0644);
    if (fd_ < 0) throw Error("cannot open cache " + path.string() + ": " + std::strerror(errno));
    if (::flock(fd_, operation) != 0) {
      ::close(fd_);
      throw Error("cannot lock cache " + path.string() + ": " + std::strerror(errno));
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

  int fd() const noexcept { return fd_; }

 private:
  int fd_ = -1;
};

}  // namespace

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {}

std::optional<std::filesystem::path> ResultCache::resolve(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  if (const char* env = std::getenv("SESHADRI_CACHE"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

std::vector<nlohmann::json> ResultCache::lookup(const std::string& key) const {
  std::vector<nlohmann::json> out;
  if (!std::filesystem::exists(path_)) return out;
  FileLock lock(path_, O_RDONLY, LOCK_SH);
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json entry = nlohmann::json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.is_object()) continue;
    if (entry.value("key", "") != key || entry.value("version", "") != SESHADRI_VERSION) continue;
    out.push_back(entry.at("value"));
  }
  return out;
}

void ResultCache::append(const std::string& key, const nlohmann::json& value) const {
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  nlohmann::json entry = {{"key", key},
                          {"value", value},
                          {"version", SESHADRI_VERSION},
                          {"timestamp", std::chrono::duration_cast<std::chrono::seconds>(now).count()}};
  std::string line = entry.dump() + "\n";
  FileLock lock(path_, O_WRONLY | O_CREAT | O_APPEND, LOCK_EX);
  const char* data = line.data();
  std::size_t left = line.size();
  while (left > 0) {
    ssize_t written = ::write(lock.fd(), data, left);
    if (written < 0) {
      if (errno == EINTR) continue;
      throw Error("cannot write cache " + path_.string() + ": " + std::strerror(errno));
    }
    data += written;
    left -= static_cast<std::size_t>(written);
  }
}

}  // namespace seshadri
