// Copyright 2026 The telexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace telexp {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for sub-stream `index` of a master seed. Independent of thread count.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Uniform double in [0, 1) built from the top 53 bits of one draw, so the
/// stream is identical across standard library implementations.
double uniform01(Rng& rng);

/// Standard normal via Box-Muller on uniform01.
double standard_normal(Rng& rng);

}  // namespace telexp
