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

// Witness trees (optimal nested partitions) and the dual functionals they
// induce.

#include <cstdint>
#include <vector>

#include "snorm/vector.hpp"

namespace snorm {

/// Either a leaf picking one coordinate (the l_inf branch) or a split into
/// successive children weighted by 1/w(parts). `parts` may exceed the child
/// count: the remaining parts miss the support.
class WitnessTree {
 public:
  static WitnessTree leaf(Index index);
  static WitnessTree split(std::int64_t parts, double weight, std::vector<WitnessTree> children);

  bool is_leaf() const { return leaf_; }
  Index leaf_index() const { return index_; }
  std::int64_t parts() const { return parts_; }
  double weight() const { return weight_; }
  const std::vector<WitnessTree>& children() const { return children_; }

  /// Value of the tree on x, bottom-up. Child sums associate from the right,
  /// the same order the interval DP uses.
  double evaluate(const FinVector& x) const;
  Index min_index() const;
  Index max_index() const;
  std::size_t leaf_count() const;
  std::size_t depth() const;

 private:
  bool leaf_ = true;
  Index index_ = 0;
  std::int64_t parts_ = 0;
  double weight_ = 1.0;
  std::vector<WitnessTree> children_;
};

/// Mirror of a witness tree: leaves carry a sign, splits carry 1/w(parts).
class Functional {
 public:
  static Functional leaf(Index index, int sign);
  static Functional split(double factor, std::vector<Functional> children);
  /// Signs follow the coordinates of x at the leaves.
  static Functional from_witness(const WitnessTree& tree, const FinVector& x);

  bool is_leaf() const { return leaf_; }
  Index leaf_index() const { return index_; }
  int sign() const { return sign_; }
  double factor() const { return factor_; }
  const std::vector<Functional>& children() const { return children_; }

  double apply(const FinVector& y) const;
  /// Flattened coefficients phi_i with apply(y) = sum phi_i y_i, by index.
  std::vector<Coord> coefficients() const;
  Index min_index() const;
  Index max_index() const;

 private:
  bool leaf_ = true;
  Index index_ = 0;
  int sign_ = 1;
  double factor_ = 1.0;
  std::vector<Functional> children_;
};

}  // namespace snorm
