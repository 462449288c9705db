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

#ifndef DIVREPAIR_SEARCH_PATCH_HPP_
#define DIVREPAIR_SEARCH_PATCH_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divrepair/lang/ast.hpp"

namespace divrepair::search {

enum class EditKind { kAppend, kReplace, kDelete };

/// A statement-level edit addressed in the original program's id space.
struct Edit {
  EditKind kind = EditKind::kDelete;
  lang::StatementId target = 0;
  /// Present iff kind is append or replace.
  std::optional<lang::StatementId> donor;

  bool operator==(const Edit&) const = default;

  static Edit append(lang::StatementId target, lang::StatementId donor) {
    return {EditKind::kAppend, target, donor};
  }
  static Edit replace(lang::StatementId target, lang::StatementId donor) {
    return {EditKind::kReplace, target, donor};
  }
  static Edit remove(lang::StatementId target) {
    return {EditKind::kDelete, target, std::nullopt};
  }

  /// "append(3,7)", "replace(3,7)", "delete(3)".
  std::string to_string() const;
  /// Inverse of to_string(); throws divrepair::Error.
  static Edit parse(std::string_view text);
};

/// Applies edits in order to a copy of `original`. An edit whose target no
/// longer exists (deleted or replaced earlier) is a no-op. Inserted donor
/// copies come from `original` and get fresh ids above its maximum. Returns
/// nullopt when the result fails static checks.
std::optional<lang::Program> apply_edits(const lang::Program& original,
                                         std::span<const Edit> edits);

/// Finds a statement by id anywhere in the program.
const lang::Stmt* find_statement(const lang::Program& program,
                                 lang::StatementId id);

}  // namespace divrepair::search

#endif  // DIVREPAIR_SEARCH_PATCH_HPP_
