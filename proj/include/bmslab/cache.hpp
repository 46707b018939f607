#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bmslab::cache {

inline constexpr const char* kToolVersion = "0.1.0";

// Identifies one computed count: the route tag distinguishes producers of
// the same number so stale producers can be audited independently.
struct CacheKey {
  std::string route;
  int m = 0;
  int g = 0;
  std::vector<long> mu;

  friend bool operator<(const CacheKey& a, const CacheKey& b) {
    if (a.route != b.route) return a.route < b.route;
    if (a.m != b.m) return a.m < b.m;
    if (a.g != b.g) return a.g < b.g;
    return a.mu < b.mu;
  }
  friend bool operator==(const CacheKey& a, const CacheKey& b) {
    return a.route == b.route && a.m == b.m && a.g == b.g && a.mu == b.mu;
  }
};

struct CacheEntry {
  CacheKey key;
  std::string value;  // rational serialized as "p/q"
  std::string version;
  std::string timestamp;  // ISO-8601 UTC
};

// Append-only JSON-lines store. Later lines supersede earlier ones with the
// same key; gc() rewrites the file keeping only the latest line per key.
class Cache {
 public:
  // A missing file is an empty cache; an unreadable line throws.
  explicit Cache(std::string path);

  const std::string& path() const { return path_; }
  std::size_t size() const { return latest_.size(); }
  std::size_t line_count() const { return lines_; }

  std::optional<std::string> lookup(const CacheKey& key) const;
  // Appends one line and updates the in-memory view.
  void store(const CacheKey& key, const std::string& value);
  // Latest entry per key, in key order.
  std::vector<CacheEntry> entries() const;
  // Compacts the file; returns the number of dropped lines.
  std::size_t gc();

 private:
  std::string path_;
  std::map<CacheKey, CacheEntry> latest_;
  std::size_t lines_ = 0;
};

// Value of BMSLAB_CACHE, or empty when unset.
std::string env_cache_path();

}  // namespace bmslab::cache
