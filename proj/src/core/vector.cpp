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
#include "snorm/vector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "snorm/error.hpp"

namespace snorm {

FinVector FinVector::from_coords(std::vector<Coord> coords) {
  FinVector out;
  out.coords_.reserve(coords.size());
  Index prev = 0;
  for (const Coord& c : coords) {
    if (c.index < 1) {
      std::ostringstream os;
      os << "coordinate index must be positive, got " << c.index;
      throw_input(os.str());
    }
    if (c.index <= prev) {
      std::ostringstream os;
      os << "coordinate indices must be strictly increasing (" << prev << " then " << c.index << ")";
      throw_input(os.str());
    }
    if (!std::isfinite(c.value)) throw_input("coordinate value is not finite");
    prev = c.index;
    if (c.value != 0.0) out.coords_.push_back(c);
  }
  return out;
}

FinVector FinVector::from_dense(std::span<const double> values) {
  std::vector<Coord> coords;
  coords.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) coords.push_back({static_cast<Index>(i + 1), values[i]});
  return from_coords(std::move(coords));
}

FinVector FinVector::unit(Index i, double value) { return from_coords({{i, value}}); }

FinVector FinVector::constant(Index start, Index length, double value) {
  if (length < 0) throw_input("negative block length");
  std::vector<Coord> coords;
  coords.reserve(static_cast<std::size_t>(length));
  for (Index i = 0; i < length; ++i) coords.push_back({start + i, value});
  return from_coords(std::move(coords));
}

Index FinVector::min_index() const { return coords_.empty() ? 0 : coords_.front().index; }
Index FinVector::max_index() const { return coords_.empty() ? 0 : coords_.back().index; }

double FinVector::at(Index i) const {
  auto it = std::lower_bound(coords_.begin(), coords_.end(), i,
                             [](const Coord& c, Index v) { return c.index < v; });
  return (it != coords_.end() && it->index == i) ? it->value : 0.0;
}

std::vector<double> FinVector::values() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const Coord& c : coords_) out.push_back(c.value);
  return out;
}

std::vector<double> FinVector::abs_values() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const Coord& c : coords_) out.push_back(std::fabs(c.value));
  return out;
}

std::vector<Index> FinVector::support() const {
  std::vector<Index> out;
  out.reserve(coords_.size());
  for (const Coord& c : coords_) out.push_back(c.index);
  return out;
}

bool FinVector::is_constant_modulus() const {
  if (coords_.empty()) return false;
  const double a = std::fabs(coords_.front().value);
  return std::all_of(coords_.begin(), coords_.end(),
                     [a](const Coord& c) { return std::fabs(c.value) == a; });
}

FinVector FinVector::scaled(double c) const {
  std::vector<Coord> coords(coords_);
  for (Coord& k : coords) k.value *= c;
  return from_coords(std::move(coords));
}

namespace {

template <class Op>
FinVector merge(const std::vector<Coord>& a, const std::vector<Coord>& b, Op op) {
  std::vector<Coord> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      out.push_back({a[i].index, op(a[i].value, 0.0)});
      ++i;
    } else if (i == a.size() || b[j].index < a[i].index) {
      out.push_back({b[j].index, op(0.0, b[j].value)});
      ++j;
    } else {
      out.push_back({a[i].index, op(a[i].value, b[j].value)});
      ++i;
      ++j;
    }
  }
  return FinVector::from_coords(std::move(out));
}

}  // namespace

FinVector FinVector::operator+(const FinVector& other) const {
  return merge(coords_, other.coords_, [](double u, double v) { return u + v; });
}

FinVector FinVector::operator-(const FinVector& other) const {
  return merge(coords_, other.coords_, [](double u, double v) { return u - v; });
}

Interval Interval::make(Index lo, Index hi) {
  if (lo < 1 || lo > hi) {
    std::ostringstream os;
    os << "invalid interval [" << lo << ", " << hi << "]";
    throw_input(os.str());
  }
  return {lo, hi};
}

OrderedPartition::OrderedPartition(std::vector<Interval> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    Interval::make(parts_[i].lo, parts_[i].hi);
    if (i > 0 && parts_[i - 1].hi >= parts_[i].lo) throw_input("partition parts are not successive");
  }
}

FinVector restrict(const FinVector& x, Interval e) {
  std::vector<Coord> out;
  for (const Coord& c : x.coords())
    if (e.contains(c.index)) out.push_back(c);
  return FinVector::from_coords(std::move(out));
}

FinVector restrict(const FinVector& x, std::span<const Index> set) {
  std::vector<Index> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Coord> out;
  for (const Coord& c : x.coords())
    if (std::binary_search(sorted.begin(), sorted.end(), c.index)) out.push_back(c);
  return FinVector::from_coords(std::move(out));
}

FinVector spread(const FinVector& x, const std::function<Index(Index)>& k) {
  std::vector<Coord> out;
  out.reserve(x.support_size());
  Index prev = 0;
  for (const Coord& c : x.coords()) {
    const Index target = k(c.index);
    if (target <= prev) throw_input("spreading map is not strictly increasing on the support");
    prev = target;
    out.push_back({target, c.value});
  }
  return FinVector::from_coords(std::move(out));
}

ElementaryNorms elementary_norms(const FinVector& x) {
  ElementaryNorms n;
  for (const Coord& c : x.coords()) {
    const double a = std::fabs(c.value);
    n.linf = std::max(n.linf, a);
    n.l1 += a;
  }
  return n;
}

FinVector linear_combination(std::span<const FinVector> xs, std::span<const double> coeffs) {
  if (xs.size() != coeffs.size()) throw_input("coefficient count does not match vector count");
  FinVector out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (coeffs[i] != 0.0) out = out + xs[i].scaled(coeffs[i]);
  return out;
}

}  // namespace snorm
