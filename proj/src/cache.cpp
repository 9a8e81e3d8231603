#include "brst/cache.hpp"

#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <openssl/evp.h>
#include <unistd.h>

#include "brst/errors.hpp"

namespace brst {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
    throw Error("internal: SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ResourceError("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::string ResultCache::key(const nlohmann::json& request) { return sha256_hex(request.dump()); }

std::filesystem::path ResultCache::path_for(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<nlohmann::json> ResultCache::load(const std::string& key) const {
  std::ifstream in(path_for(key));
  if (!in) return std::nullopt;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // unreadable entry, recompute
  }
}

void ResultCache::store(const std::string& key, const nlohmann::json& result) const {
  static std::atomic<unsigned> counter{0};
  std::ostringstream tmp_name;
  tmp_name << key << ".tmp." << ::getpid() << '.' << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
           << counter++;
  const auto tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write cache file " + tmp.string());
    out << result.dump();
    if (!out.flush()) throw ResourceError("cannot write cache file " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path_for(key), ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ResourceError("cannot move cache file into place: " + ec.message());
  }
}

}  // namespace brst
