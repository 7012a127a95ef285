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
#include "snorm/norm_system.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "snorm/error.hpp"

namespace snorm {

NormSystem NormSystem::f_system() {
  NormSystem s;
  s.name_ = "f";
  s.min_parts_ = 2;
  return s;
}

NormSystem NormSystem::g_system() {
  NormSystem s;
  s.name_ = "g";
  s.min_parts_ = 3;
  s.b_ = 0.5;
  return s;
}

NormSystem NormSystem::log2_affine(std::string name, int min_parts, double a, double b) {
  if (min_parts < 2) throw_input("minimum part count must be at least 2");
  if (!(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) throw_input("weight slope must be positive");
  if (!(std::log2(a + b * min_parts) > 1.0)) throw_input("weights must exceed 1 on their domain");
  NormSystem s;
  s.name_ = std::move(name);
  s.min_parts_ = min_parts;
  s.a_ = a;
  s.b_ = b;
  return s;
}

NormSystem NormSystem::from_table(std::string name, int min_parts, std::vector<double> weights) {
  if (min_parts < 2) throw_input("minimum part count must be at least 2");
  if (weights.empty()) throw_input("weight table is empty");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 1.0) || !std::isfinite(weights[i])) throw_input("weights must be finite and exceed 1");
    if (i > 0 && !(weights[i] > weights[i - 1])) throw_input("weights must be strictly increasing");
  }
  NormSystem s;
  s.name_ = std::move(name);
  s.min_parts_ = min_parts;
  s.kind_ = Kind::kTable;
  s.table_ = std::move(weights);
  return s;
}

NormSystem NormSystem::builtin(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "f") return f_system();
  if (lower == "g") return g_system();
  throw_input("unknown weight system '" + name + "' (expected f or g)");
}

double NormSystem::weight(double n) const {
  if (kind_ == Kind::kTable) {
    const double offset = n - min_parts_;
    if (offset < 0 || offset != std::floor(offset)) throw_input("weight table needs an integer n >= l0");
    if (offset >= static_cast<double>(table_.size())) {
      std::ostringstream os;
      os << "weight table of system '" << name_ << "' ends before n = " << n;
      throw_guard(os.str());
    }
    return table_[static_cast<std::size_t>(offset)];
  }
  if (name_ == "f" && a_ == 1.0 && b_ == 1.0) return f_weight(n);
  if (name_ == "g" && a_ == 1.0 && b_ == 0.5) return g_weight(n);
  return std::log2(a_ + b_ * n);
}

double NormSystem::padded_weight(std::int64_t k) const {
  return weight(static_cast<double>(std::max<std::int64_t>(k, min_parts_)));
}

std::vector<double> NormSystem::padded_weights(std::size_t count) const {
  std::vector<double> w(count + 1, 0.0);
  for (std::size_t k = 1; k <= count; ++k) w[k] = padded_weight(static_cast<std::int64_t>(k));
  return w;
}

std::string NormSystem::id() const {
  std::ostringstream os;
  os.precision(17);
  os << name_ << "/l0=" << min_parts_;
  if (kind_ == Kind::kTable) {
    os << "/table";
    for (double w : table_) os << ',' << w;
  } else {
    os << "/a=" << a_ << "/b=" << b_;
  }
  return os.str();
}

}  // namespace snorm
