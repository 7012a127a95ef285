// Copyright 2026 The snorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "snorm/memo.hpp"

#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>
#include <vector>

#include "snorm/error.hpp"

namespace snorm {

namespace {

constexpr char kMagic[8] = {'S', 'N', 'O', 'R', 'M', 'M', 'C', '1'};

template <class T>
void put(std::string& buf, const T& v) {
  buf.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}
  template <class T>
  bool get(T& v) {
    if (pos_ + sizeof(T) > data_.size()) return false;
    std::memcpy(&v, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return true;
  }
  bool bytes(std::size_t n, std::string& out) {
    if (pos_ + n > data_.size()) return false;
    out.assign(data_.data() + pos_, n);
    pos_ += n;
    return true;
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t digest(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t digest(std::span<const double> values) {
  return digest(std::string_view(reinterpret_cast<const char*>(values.data()), values.size_bytes()));
}

std::string MemoTable::key(const std::string& system_id, std::span<const double> canonical) {
  std::string k = system_id;
  k.push_back('\0');
  k.append(reinterpret_cast<const char*>(canonical.data()), canonical.size_bytes());
  return k;
}

std::optional<double> MemoTable::find(const std::string& system_id, std::span<const double> canonical) const {
  std::shared_lock lock(mu_);
  auto it = map_.find(key(system_id, canonical));
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void MemoTable::insert(const std::string& system_id, std::span<const double> canonical, double value) {
  std::unique_lock lock(mu_);
  map_.insert_or_assign(key(system_id, canonical), value);
}

std::size_t MemoTable::size() const {
  std::shared_lock lock(mu_);
  return map_.size();
}

void MemoTable::clear() {
  std::unique_lock lock(mu_);
  map_.clear();
}

// Layout: magic, version length + bytes, entry count, then per entry
// (key length, key bytes, key digest, value), then an FNV-1a checksum of
// everything before it.
void MemoTable::save(const std::string& path) const {
  std::string buf(kMagic, sizeof(kMagic));
  const std::string version(kEngineVersion);
  put(buf, static_cast<std::uint32_t>(version.size()));
  buf += version;
  {
    std::shared_lock lock(mu_);
    put(buf, static_cast<std::uint64_t>(map_.size()));
    for (const auto& [k, v] : map_) {
      put(buf, static_cast<std::uint64_t>(k.size()));
      buf += k;
      put(buf, digest(k));
      put(buf, v);
    }
  }
  put(buf, digest(buf));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_input("cannot write cache file " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

bool MemoTable::load(const std::string& path, std::string* warning) {
  auto fail = [&](const std::string& why) {
    clear();
    if (warning) *warning = "cache " + path + " " + why + "; rebuilding";
    return false;
  };
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail("not readable");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string data = ss.str();
  if (data.size() < sizeof(kMagic) + sizeof(std::uint64_t)) return fail("is truncated");
  const std::string_view body(data.data(), data.size() - sizeof(std::uint64_t));
  std::uint64_t checksum = 0;
  std::memcpy(&checksum, data.data() + body.size(), sizeof(checksum));
  if (checksum != digest(body)) return fail("failed its checksum");
  if (std::memcmp(body.data(), kMagic, sizeof(kMagic)) != 0) return fail("has a bad header");
  Reader r(body.substr(sizeof(kMagic)));
  std::uint32_t vlen = 0;
  std::string version;
  if (!r.get(vlen) || !r.bytes(vlen, version)) return fail("is truncated");
  if (version != kEngineVersion) return fail("was written by engine " + version);
  std::uint64_t count = 0;
  if (!r.get(count)) return fail("is truncated");
  std::unordered_map<std::string, double> loaded;
  for (std::uint64_t e = 0; e < count; ++e) {
    std::uint64_t klen = 0, kdigest = 0;
    std::string k;
    double v = 0.0;
    if (!r.get(klen) || !r.bytes(klen, k) || !r.get(kdigest) || !r.get(v)) return fail("is truncated");
    if (kdigest != digest(k)) return fail("has a corrupt entry");
    loaded.emplace(std::move(k), v);
  }
  std::unique_lock lock(mu_);
  map_ = std::move(loaded);
  return true;
}

}  // namespace snorm
