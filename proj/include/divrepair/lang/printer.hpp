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

#ifndef DIVREPAIR_LANG_PRINTER_HPP_
#define DIVREPAIR_LANG_PRINTER_HPP_

#include <string>

#include "divrepair/lang/ast.hpp"

namespace divrepair::lang {

std::string pretty_print(const Program& program);
std::string pretty_print(const Stmt& stmt);
std::string pretty_print(const Expr& expr);

/// Shortest round-trip decimal text for a float. Integral values get a
/// trailing ".0" so the text reads back as a float; non-finite values print
/// as "inf", "-inf", "nan".
std::string format_float(double value);

std::string format_scalar(const Scalar& value);

}  // namespace divrepair::lang

#endif  // DIVREPAIR_LANG_PRINTER_HPP_
