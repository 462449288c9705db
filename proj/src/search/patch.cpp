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

#include "divrepair/search/patch.hpp"

#include <charconv>

#include "divrepair/common/errors.hpp"
#include "divrepair/lang/parser.hpp"

namespace divrepair::search {
namespace {

struct Location {
  lang::Block* block = nullptr;
  std::size_t index = 0;
};

std::optional<Location> locate(lang::Block& block, lang::StatementId id) {
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (block[i].id == id) return Location{&block, i};
    if (auto found = locate(block[i].then_body, id)) return found;
    if (auto found = locate(block[i].else_body, id)) return found;
  }
  return std::nullopt;
}

std::optional<Location> locate(lang::Program& program, lang::StatementId id) {
  for (lang::Function& f : program.functions) {
    if (auto found = locate(f.body, id)) return found;
  }
  return std::nullopt;
}

const lang::Stmt* find_in(const lang::Block& block, lang::StatementId id) {
  for (const lang::Stmt& s : block) {
    if (s.id == id) return &s;
    if (const auto* found = find_in(s.then_body, id)) return found;
    if (const auto* found = find_in(s.else_body, id)) return found;
  }
  return nullptr;
}

void refresh_ids(lang::Stmt& s, lang::StatementId& next) {
  s.id = next++;
  for (lang::Stmt& c : s.then_body) refresh_ids(c, next);
  for (lang::Stmt& c : s.else_body) refresh_ids(c, next);
}

const char* kind_name(EditKind kind) {
  switch (kind) {
    case EditKind::kAppend: return "append";
    case EditKind::kReplace: return "replace";
    case EditKind::kDelete: return "delete";
  }
  return "?";
}

lang::StatementId parse_id(std::string_view text, std::string_view whole) {
  lang::StatementId id = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), id);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("malformed edit '" + std::string(whole) + "'");
  }
  return id;
}

}  // namespace

std::string Edit::to_string() const {
  std::string text = kind_name(kind);
  text += '(' + std::to_string(target);
  if (donor) text += ',' + std::to_string(*donor);
  return text + ')';
}

Edit Edit::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw Error("malformed edit '" + std::string(text) + "'");
  }
  const std::string_view name = text.substr(0, open);
  const std::string_view args = text.substr(open + 1, text.size() - open - 2);
  const auto comma = args.find(',');
  Edit e;
  if (name == "delete") {
    if (comma != std::string_view::npos) throw Error("delete takes one id");
    e.kind = EditKind::kDelete;
    e.target = parse_id(args, text);
    return e;
  }
  if (name == "append") {
    e.kind = EditKind::kAppend;
  } else if (name == "replace") {
    e.kind = EditKind::kReplace;
  } else {
    throw Error("unknown edit kind in '" + std::string(text) + "'");
  }
  if (comma == std::string_view::npos) throw Error("edit needs a donor id");
  e.target = parse_id(args.substr(0, comma), text);
  e.donor = parse_id(args.substr(comma + 1), text);
  return e;
}

const lang::Stmt* find_statement(const lang::Program& program,
                                 lang::StatementId id) {
  for (const lang::Function& f : program.functions) {
    if (const auto* found = find_in(f.body, id)) return found;
  }
  return nullptr;
}

std::optional<lang::Program> apply_edits(const lang::Program& original,
                                         std::span<const Edit> edits) {
  lang::Program patched = original;
  lang::StatementId next = lang::max_statement_id(original) + 1;
  for (const Edit& e : edits) {
    auto where = locate(patched, e.target);
    if (!where) continue;
    lang::Block& block = *where->block;
    const auto at = static_cast<std::ptrdiff_t>(where->index);
    if (e.kind == EditKind::kDelete) {
      block.erase(block.begin() + at);
      continue;
    }
    const lang::Stmt* donor = e.donor ? find_statement(original, *e.donor) : nullptr;
    if (!donor) return std::nullopt;
    lang::Stmt copy = *donor;
    refresh_ids(copy, next);
    if (e.kind == EditKind::kAppend) {
      block.insert(block.begin() + at + 1, std::move(copy));
    } else {
      block[where->index] = std::move(copy);
    }
  }
  if (!lang::try_resolve(patched)) return std::nullopt;
  return patched;
}

}  // namespace divrepair::search
