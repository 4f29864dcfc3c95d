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

#include "qgsa/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgsa {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("Rng::below requires a positive bound");
  }
  // Rejection over the largest multiple of n.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t value = engine_();
  while (value >= limit) {
    value = engine_();
  }
  return value % n;
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  // 1 - u1 lies in (0, 1], keeping the log finite.
  const double radius = std::sqrt(-2.0 * std::log1p(-u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

namespace {

// Log pmf of Binomial(n, p) at m via lgamma.
double log_binomial_pmf(std::uint64_t n, double p, std::uint64_t m) {
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return std::lgamma(nd + 1.0) - std::lgamma(md + 1.0) - std::lgamma(nd - md + 1.0) +
         md * std::log(p) + (nd - md) * std::log1p(-p);
}

// Inverts one uniform draw against the pmf, enumerating outcomes outward
// from the mode so the expected number of terms is O(sqrt(n p (1-p))).
// Any fixed enumeration order is a valid partition of [0, 1).
std::uint64_t binomial_from_mode(Rng& rng, std::uint64_t n, double p) {
  const double u = rng.uniform();
  const std::uint64_t mode =
      static_cast<std::uint64_t>(std::min(static_cast<double>(n), (static_cast<double>(n) + 1.0) * p));
  const double ratio = p / (1.0 - p);

  double pmf_up = std::exp(log_binomial_pmf(n, p, mode));
  double pmf_down = pmf_up;
  std::uint64_t up = mode;
  std::uint64_t down = mode;
  double accumulated = pmf_up;
  if (u < accumulated) {
    return mode;
  }
  while (up < n || down > 0) {
    if (up < n) {
      pmf_up *= ratio * static_cast<double>(n - up) / static_cast<double>(up + 1);
      ++up;
      accumulated += pmf_up;
      if (u < accumulated) {
        return up;
      }
    }
    if (down > 0) {
      pmf_down *= static_cast<double>(down) / (ratio * static_cast<double>(n - down + 1));
      --down;
      accumulated += pmf_down;
      if (u < accumulated) {
        return down;
      }
    }
  }
  // The accumulated mass fell short of u by floating-point leakage; the
  // missing probability is far below anything observable.
  return mode;
}

}  // namespace

std::uint64_t binomial_draw(Rng& rng, std::uint64_t n, double p) {
  if (p <= 0.0) {
    return 0;
  }
  if (p >= 1.0) {
    return n;
  }
  if (n <= 1024) {
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      count += rng.uniform() < p ? 1 : 0;
    }
    return count;
  }
  return binomial_from_mode(rng, n, p);
}

}  // namespace qgsa
