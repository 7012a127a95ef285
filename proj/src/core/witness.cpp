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
#include "snorm/witness.hpp"

#include <algorithm>
#include <cmath>

#include "snorm/error.hpp"

namespace snorm {

WitnessTree WitnessTree::leaf(Index index) {
  WitnessTree t;
  t.index_ = index;
  return t;
}

WitnessTree WitnessTree::split(std::int64_t parts, double weight, std::vector<WitnessTree> children) {
  if (children.empty()) throw_input("witness split without children");
  if (static_cast<std::int64_t>(children.size()) > parts) throw_input("witness split has more children than parts");
  for (std::size_t i = 1; i < children.size(); ++i)
    if (children[i - 1].max_index() >= children[i].min_index())
      throw_input("witness children are not successive");
  WitnessTree t;
  t.leaf_ = false;
  t.parts_ = parts;
  t.weight_ = weight;
  t.children_ = std::move(children);
  return t;
}

double WitnessTree::evaluate(const FinVector& x) const {
  if (leaf_) return std::fabs(x.at(index_));
  double sum = 0.0;
  for (auto it = children_.rbegin(); it != children_.rend(); ++it) {
    const double v = it->evaluate(x);
    sum = (it == children_.rbegin()) ? v : v + sum;
  }
  return sum / weight_;
}

Index WitnessTree::min_index() const { return leaf_ ? index_ : children_.front().min_index(); }
Index WitnessTree::max_index() const { return leaf_ ? index_ : children_.back().max_index(); }

std::size_t WitnessTree::leaf_count() const {
  if (leaf_) return 1;
  std::size_t n = 0;
  for (const auto& c : children_) n += c.leaf_count();
  return n;
}

std::size_t WitnessTree::depth() const {
  if (leaf_) return 0;
  std::size_t d = 0;
  for (const auto& c : children_) d = std::max(d, c.depth());
  return d + 1;
}

Functional Functional::leaf(Index index, int sign) {
  Functional f;
  f.index_ = index;
  f.sign_ = sign < 0 ? -1 : 1;
  return f;
}

Functional Functional::split(double factor, std::vector<Functional> children) {
  if (children.empty()) throw_input("functional split without children");
  Functional f;
  f.leaf_ = false;
  f.factor_ = factor;
  f.children_ = std::move(children);
  return f;
}

Functional Functional::from_witness(const WitnessTree& tree, const FinVector& x) {
  if (tree.is_leaf()) return leaf(tree.leaf_index(), x.at(tree.leaf_index()) < 0.0 ? -1 : 1);
  std::vector<Functional> kids;
  kids.reserve(tree.children().size());
  for (const auto& c : tree.children()) kids.push_back(from_witness(c, x));
  return split(1.0 / tree.weight(), std::move(kids));
}

double Functional::apply(const FinVector& y) const {
  if (leaf_) return sign_ * y.at(index_);
  double sum = 0.0;
  for (const auto& c : children_) sum += c.apply(y);
  return factor_ * sum;
}

namespace {

void flatten(const Functional& f, double scale, std::vector<Coord>& out) {
  if (f.is_leaf()) {
    out.push_back({f.leaf_index(), scale * f.sign()});
    return;
  }
  for (const auto& c : f.children()) flatten(c, scale * f.factor(), out);
}

}  // namespace

std::vector<Coord> Functional::coefficients() const {
  std::vector<Coord> out;
  flatten(*this, 1.0, out);
  return out;
}

Index Functional::min_index() const { return leaf_ ? index_ : children_.front().min_index(); }
Index Functional::max_index() const { return leaf_ ? index_ : children_.back().max_index(); }

}  // namespace snorm
