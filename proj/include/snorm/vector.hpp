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
#pragma once

// Finitely supported real sequences, index intervals and ordered partitions.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace snorm {

using Index = std::int64_t;  // 1-based coordinate index

struct Coord {
  Index index;
  double value;

  friend bool operator==(const Coord&, const Coord&) = default;
};

/// A vector in c00. Coordinates are kept sorted by index and zero values are
/// never stored.
class FinVector {
 public:
  FinVector() = default;

  /// Throws Error(kInput) on non-increasing or non-positive indices or
  /// non-finite values. Zero values are dropped.
  static FinVector from_coords(std::vector<Coord> coords);
  /// Dense values, the first entry has index 1.
  static FinVector from_dense(std::span<const double> values);
  static FinVector unit(Index i, double value = 1.0);
  /// value * (e_start + ... + e_{start+length-1})
  static FinVector constant(Index start, Index length, double value);

  std::span<const Coord> coords() const { return coords_; }
  std::size_t support_size() const { return coords_.size(); }
  bool empty() const { return coords_.empty(); }
  Index min_index() const;
  Index max_index() const;
  double at(Index i) const;

  std::vector<double> values() const;
  std::vector<double> abs_values() const;
  std::vector<Index> support() const;

  /// True when every stored |value| is identical.
  bool is_constant_modulus() const;

  FinVector scaled(double c) const;
  FinVector operator+(const FinVector& other) const;
  FinVector operator-(const FinVector& other) const;

  friend bool operator==(const FinVector&, const FinVector&) = default;

 private:
  std::vector<Coord> coords_;
};

struct Interval {
  Index lo;
  Index hi;

  /// Throws Error(kInput) unless 1 <= lo <= hi.
  static Interval make(Index lo, Index hi);
  bool contains(Index i) const { return lo <= i && i <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Intervals E_1 < E_2 < ... < E_n.
class OrderedPartition {
 public:
  OrderedPartition() = default;
  /// Throws Error(kInput) unless parts are strictly increasing.
  explicit OrderedPartition(std::vector<Interval> parts);
  std::span<const Interval> parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }

 private:
  std::vector<Interval> parts_;
};

FinVector restrict(const FinVector& x, Interval e);
/// Projection onto an arbitrary index set; the empty set gives 0.
FinVector restrict(const FinVector& x, std::span<const Index> set);

/// Moves coordinate i to k(i). Throws Error(kInput) if k is not strictly
/// increasing (and positive) on the support of x.
FinVector spread(const FinVector& x, const std::function<Index(Index)>& k);

struct ElementaryNorms {
  double linf = 0.0;
  double l1 = 0.0;
};

ElementaryNorms elementary_norms(const FinVector& x);

/// sum a_i x_i; the vectors need not be disjoint.
FinVector linear_combination(std::span<const FinVector> xs, std::span<const double> coeffs);

}  // namespace snorm
