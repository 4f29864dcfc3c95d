// Copyright 2026 The qgsa developers
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

#include <cstdint>
#include <random>

namespace qgsa {

/// Seeded generator with self-contained draw functions.
///
/// The standard `<random>` distributions are implementation-defined, so runs
/// would not be bit-for-bit reproducible across standard libraries. Every
/// draw here is derived from the raw mt19937_64 stream with fixed arithmetic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unbiased integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// +1 or -1 with equal probability.
  int rademacher() { return (engine_() >> 63) ? +1 : -1; }

  /// Standard normal (Box-Muller, one value cached).
  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Exact binomial draw, deterministic given the generator state.
/// Counts Bernoulli outcomes for small n; for large n inverts the pmf by an
/// alternating walk outward from the mode (one uniform per call).
std::uint64_t binomial_draw(Rng& rng, std::uint64_t n, double p);

}  // namespace qgsa
