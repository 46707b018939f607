#include "bmslab/cache.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace bmslab::cache {
namespace {

using nlohmann::json;

std::string now_iso8601() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json entry_to_json(const CacheEntry& e) {
  json j;
  j["route"] = e.key.route;
  j["m"] = e.key.m;
  j["g"] = e.key.g;
  j["mu"] = e.key.mu;
  j["value"] = e.value;
  j["version"] = e.version;
  j["timestamp"] = e.timestamp;
  return j;
}

CacheEntry entry_from_json(const json& j) {
  CacheEntry e;
  e.key.route = j.at("route").get<std::string>();
  e.key.m = j.at("m").get<int>();
  e.key.g = j.at("g").get<int>();
  e.key.mu = j.at("mu").get<std::vector<long>>();
  e.value = j.at("value").get<std::string>();
  e.version = j.at("version").get<std::string>();
  e.timestamp = j.at("timestamp").get<std::string>();
  return e;
}

}  // namespace

Cache::Cache(std::string path) : path_(std::move(path)) {
  if (path_.empty()) {
    throw std::invalid_argument("cache: empty path");
  }
  std::ifstream in(path_);
  if (!in.is_open()) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    CacheEntry e;
    try {
      e = entry_from_json(json::parse(line));
    } catch (const std::exception& ex) {
      throw std::runtime_error("cache: bad line " + std::to_string(lineno) +
                               " in " + path_ + ": " + ex.what());
    }
    latest_[e.key] = std::move(e);
    ++lines_;
  }
}

std::optional<std::string> Cache::lookup(const CacheKey& key) const {
  auto it = latest_.find(key);
  if (it == latest_.end()) return std::nullopt;
  return it->second.value;
}

void Cache::store(const CacheKey& key, const std::string& value) {
  CacheEntry e;
  e.key = key;
  e.value = value;
  e.version = kToolVersion;
  e.timestamp = now_iso8601();
  std::ofstream out(path_, std::ios::app);
  if (!out.is_open()) {
    throw std::runtime_error("cache: cannot append to " + path_);
  }
  out << entry_to_json(e).dump() << "\n";
  if (!out) {
    throw std::runtime_error("cache: write failed for " + path_);
  }
  latest_[e.key] = std::move(e);
  ++lines_;
}

std::vector<CacheEntry> Cache::entries() const {
  std::vector<CacheEntry> out;
  out.reserve(latest_.size());
  for (const auto& [key, e] : latest_) out.push_back(e);
  return out;
}

std::size_t Cache::gc() {
  std::ofstream out(path_, std::ios::trunc);
  if (!out.is_open()) {
    throw std::runtime_error("cache: cannot rewrite " + path_);
  }
  for (const auto& [key, e] : latest_) {
    out << entry_to_json(e).dump() << "\n";
  }
  if (!out) {
    throw std::runtime_error("cache: rewrite failed for " + path_);
  }
  std::size_t dropped = lines_ - latest_.size();
  lines_ = latest_.size();
  return dropped;
}

std::string env_cache_path() {
  const char* v = std::getenv("BMSLAB_CACHE");
  return v ? std::string(v) : std::string();
}

}  // namespace bmslab::cache
