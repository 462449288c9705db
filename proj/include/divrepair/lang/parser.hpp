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

#ifndef DIVREPAIR_LANG_PARSER_HPP_
#define DIVREPAIR_LANG_PARSER_HPP_

#include <filesystem>
#include <string_view>

#include "divrepair/lang/ast.hpp"

namespace divrepair::lang {

/// Parses and resolves a `.mini` source. Statements are numbered from 1 in
/// source order. Throws SyntaxError or SemanticError.
Program parse(std::string_view source);

Program parse_file(const std::filesystem::path& path);

/// Checks the static rules and fills variable slots and callee indices.
/// Throws SemanticError; leaves `program` partially resolved on failure.
void resolve(Program& program);

/// Non-throwing form of resolve() used when screening mutants.
bool try_resolve(Program& program);

}  // namespace divrepair::lang

#endif  // DIVREPAIR_LANG_PARSER_HPP_
