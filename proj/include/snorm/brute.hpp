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

#include "snorm/norm_system.hpp"
#include "snorm/vector.hpp"

namespace snorm {

inline constexpr std::size_t kBruteSupportCap = 8;

/// Independent oracle for the implicit norm: enumerates every family of
/// successive finite sets E_1 < ... < E_k (arbitrary subsets of the support,
/// points may be skipped), with the recursion memoized over support subsets.
/// Throws Error(kGuard) above kBruteSupportCap support points.
double brute_norm(const NormSystem& sys, const FinVector& x);

}  // namespace snorm
