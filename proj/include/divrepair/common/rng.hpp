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

#ifndef DIVREPAIR_COMMON_RNG_HPP_
#define DIVREPAIR_COMMON_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace divrepair {

/// splitmix64 generator. Every stochastic decision in the library draws from
/// one of these, so a seed fully determines a run. The standard library
/// distributions are avoided on purpose: their output is implementation
/// defined, and seeds must mean the same thing on every toolchain.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform integer in [lo, hi]; rejection sampling, no modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform index in [0, n). Requires n > 0.
  std::size_t index(std::size_t n);

  /// Uniform double in [0, 1) built from the top 53 bits.
  double uniform_real();

  bool coin() { return (next_u64() >> 63) != 0; }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

/// The splitmix64 output finalizer, usable as a 64-bit mixing function.
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a over the bytes of `text`.
std::uint64_t fnv1a(std::string_view text, std::uint64_t basis = 0xcbf29ce484222325ULL);

/// Derives an independent seed from a master seed and a list of labels.
/// The result depends on the labels' order and content, never on call order.
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::string_view> labels);

}  // namespace divrepair

#endif  // DIVREPAIR_COMMON_RNG_HPP_
