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

#include <atomic>
#include <map>
#include <stdexcept>
#include <vector>

#include "divrepair/common/parallel.hpp"
#include "divrepair/common/rng.hpp"
#include "doctest.h"

namespace {

using namespace divrepair;

TEST_CASE("parallel_for: every index exactly once") {
  for (int jobs : {1, 2, 4, 8}) {
    for (std::size_t n : {0u, 1u, 2u, 7u, 1000u}) {
      std::vector<std::atomic<int>> hits(n);
      parallel_for(n, Jobs{jobs}, [&](std::size_t i) { ++hits[i]; });
      for (std::size_t i = 0; i < n; ++i) CHECK(hits[i] == 1);
    }
  }
}

TEST_CASE("parallel_for: exceptions reach the caller") {
  for (int jobs : {1, 4}) {
    std::atomic<int> ran{0};
    CHECK_THROWS_AS(parallel_for(50, Jobs{jobs},
                                 [&](std::size_t i) {
                                   ++ran;
                                   if (i == 17) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
    CHECK(ran >= 1);
  }
}

TEST_CASE("SeededRng: reference splitmix64 stream") {
  SeededRng rng(0);
  CHECK(rng.next_u64() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next_u64() == 0x6e789e6aa1b965f4ULL);
  CHECK(mix64(0) == 0);
}

TEST_CASE("SeededRng: ranges and rough uniformity") {
  SeededRng rng(5);
  std::map<std::int64_t, int> counts;
  for (int i = 0; i < 60000; ++i) {
    const auto v = rng.uniform_int(-2, 3);
    REQUIRE(v >= -2);
    REQUIRE(v <= 3);
    ++counts[v];
  }
  CHECK(counts.size() == 6);
  for (auto [v, c] : counts) {
    CAPTURE(v);
    CHECK(c > 9400);
    CHECK(c < 10600);
  }
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform_real();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(rng.index(3) < 3);
  }
  CHECK(rng.uniform_int(7, 7) == 7);
}

TEST_CASE("fnv1a and derive_seed") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
  CHECK(derive_seed(1, {"a", "b"}) == derive_seed(1, {"a", "b"}));
  CHECK(derive_seed(1, {"a", "b"}) != derive_seed(1, {"b", "a"}));
  CHECK(derive_seed(1, {"ab"}) != derive_seed(1, {"a", "b"}));
  CHECK(derive_seed(1, {"a"}) != derive_seed(2, {"a"}));
}

}  // namespace
