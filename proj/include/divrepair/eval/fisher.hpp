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

#ifndef DIVREPAIR_EVAL_FISHER_HPP_
#define DIVREPAIR_EVAL_FISHER_HPP_

#include <cstdint>

namespace divrepair::eval {

struct FisherResult {
  double p = 1.0;
  /// A row or column margin was zero; p is 1 by convention.
  bool degenerate = false;
};

/// Two-sided Fisher exact test on the 2x2 table
///
///        col1  col2
///   row1   a     b
///   row2   c     d
///
/// p sums the hypergeometric probabilities of every table with the observed
/// margins that is no more likely than the observed one (relative tolerance
/// 1e-12 on the comparison).
FisherResult fisher_exact_two_sided(std::uint64_t a, std::uint64_t b,
                                    std::uint64_t c, std::uint64_t d);

}  // namespace divrepair::eval

#endif  // DIVREPAIR_EVAL_FISHER_HPP_
