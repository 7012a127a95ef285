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
#include "snorm/brute.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <vector>

#include "snorm/error.hpp"

namespace snorm {

namespace {

class BruteOracle {
 public:
  BruteOracle(const NormSystem& sys, std::vector<double> a)
      : sys_(sys), a_(std::move(a)), memo_(std::size_t{1} << a_.size(), -1.0) {}

  double norm(std::uint32_t mask) {
    double& slot = memo_[mask];
    if (slot >= 0.0) return slot;
    double best = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (mask & (1u << i)) best = std::max(best, a_[i]);
    if (std::popcount(mask) >= 2) {
      std::vector<std::uint32_t> parts;
      std::vector<std::size_t> points;
      for (std::size_t i = 0; i < a_.size(); ++i)
        if (mask & (1u << i)) points.push_back(i);
      enumerate(mask, points, 0, 0u, parts, best);
    }
    slot = best;
    return best;
  }

 private:
  // Each point is skipped, joins the open set, or opens a new set.
  void enumerate(std::uint32_t whole, const std::vector<std::size_t>& points, std::size_t at,
                 std::uint32_t open, std::vector<std::uint32_t>& closed, double& best) {
    if (at == points.size()) {
      if (open != 0) closed.push_back(open);
      const std::size_t k = closed.size();
      if (k >= 1 && !(k == 1 && closed.front() == whole)) {
        double sum = 0.0;
        for (std::uint32_t part : closed) sum += norm(part);
        const double cand = sum / sys_.padded_weight(static_cast<std::int64_t>(k));
        best = std::max(best, cand);
      }
      if (open != 0) closed.pop_back();
      return;
    }
    const std::uint32_t bit = 1u << points[at];
    enumerate(whole, points, at + 1, open, closed, best);
    enumerate(whole, points, at + 1, open | bit, closed, best);
    if (open != 0) {
      closed.push_back(open);
      enumerate(whole, points, at + 1, bit, closed, best);
      closed.pop_back();
    }
  }

  const NormSystem& sys_;
  std::vector<double> a_;
  std::vector<double> memo_;
};

}  // namespace

double brute_norm(const NormSystem& sys, const FinVector& x) {
  if (x.support_size() > kBruteSupportCap) {
    std::ostringstream os;
    os << "brute_norm is capped at " << kBruteSupportCap << " support points, got " << x.support_size();
    throw_guard(os.str());
  }
  if (x.empty()) return 0.0;
  BruteOracle oracle(sys, x.abs_values());
  return oracle.norm((1u << x.support_size()) - 1u);
}

}  // namespace snorm
