// Copyright 2026 The divrepair Authors
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

#include "divrepair/eval/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace divrepair::eval {
namespace {

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

FisherResult fisher_exact_two_sided(std::uint64_t a, std::uint64_t b,
                                    std::uint64_t c, std::uint64_t d) {
  const std::uint64_t row1 = a + b;
  const std::uint64_t row2 = c + d;
  const std::uint64_t col1 = a + c;
  const std::uint64_t col2 = b + d;
  if (row1 == 0 || row2 == 0 || col1 == 0 || col2 == 0) return {1.0, true};

  // Tables with these margins are indexed by their top-left cell x.
  const std::uint64_t lo = col1 > row2 ? col1 - row2 : 0;
  const std::uint64_t hi = std::min(row1, col1);
  const auto r1 = static_cast<double>(row1);
  const auto r2 = static_cast<double>(row2);
  const auto c1 = static_cast<double>(col1);

  std::vector<double> log_p;
  log_p.reserve(hi - lo + 1);
  double peak = -INFINITY;
  for (std::uint64_t x = lo; x <= hi; ++x) {
    const auto xd = static_cast<double>(x);
    log_p.push_back(log_choose(r1, xd) + log_choose(r2, c1 - xd));
    peak = std::max(peak, log_p.back());
  }
  // Scaling by the mode keeps every term representable; the common
  // normalizer C(n, col1) cancels in the ratio.
  const double observed = std::exp(log_p[a - lo] - peak);
  const double cutoff = observed * (1.0 + 1e-12);
  double total = 0.0;
  double tail = 0.0;
  for (double lp : log_p) {
    const double p = std::exp(lp - peak);
    total += p;
    if (p <= cutoff) tail += p;
  }
  return {std::clamp(tail / total, 0.0, 1.0), false};
}

}  // namespace divrepair::eval
