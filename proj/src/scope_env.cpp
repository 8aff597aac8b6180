// Copyright 2026 The smtkit Authors
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

#include "smtkit/scope_env.hpp"

#include <algorithm>
#include <utility>

namespace smtkit {

SExpr
declaration_command(const std::string& name, const Signature& sig)
{
  if (const auto* s = std::get_if<Sort>(&sig))
  {
    return SExpr::list({sym("declare-const"), SExpr::symbol(name), emit_sort(*s)});
  }
  const auto& rank = std::get<FuncRank>(sig);
  std::vector<SExpr> params;
  for (const Sort& p : rank.params) params.push_back(emit_sort(p));
  return SExpr::list({sym("declare-fun"),
                      SExpr::symbol(name),
                      SExpr::list(std::move(params)),
                      emit_sort(rank.result)});
}

EnvStack::EnvStack() : d_levels(1) {}

const Declaration*
EnvStack::find(std::string_view name) const
{
  for (const Level& level : d_levels)
  {
    if (auto it = level.names.find(name); it != level.names.end()) return &it->second;
  }
  return nullptr;
}

const Declaration&
EnvStack::lookup(std::string_view name) const
{
  if (const Declaration* d = find(name)) return *d;
  throw UndeclaredName(std::string(name));
}

std::optional<SExpr>
EnvStack::declare(const std::string& name, const Signature& sig)
{
  if (name.empty() || name.find('|') != std::string::npos)
  {
    throw MalformedSpecifierList("invalid variable name: " + name);
  }
  if (const Declaration* existing = find(name))
  {
    if (existing->signature == sig) return std::nullopt;
    throw ConflictingDeclaration(name, to_string(existing->signature), to_string(sig));
  }
  SExpr cmd = declaration_command(name, sig);
  Level& top = d_levels.back();
  top.names.emplace(name, Declaration{name, sig, d_levels.size() - 1, d_next_ordinal++});
  top.commands.push_back(cmd);
  return cmd;
}

std::vector<SExpr>
EnvStack::merge_inline_specifiers(const SExpr& specifiers, const SortRegistry& registry)
{
  if (!specifiers.is_list())
  {
    throw MalformedSpecifierList("variable specifiers must be a list: " + print(specifiers));
  }
  const auto& items = specifiers.items();
  if (items.size() % 2 != 0)
  {
    throw MalformedSpecifierList("variable specifiers must alternate names and sorts: "
                                 + print(specifiers));
  }

  EnvStack scratch = *this;
  std::vector<SExpr> commands;
  for (std::size_t i = 0; i < items.size(); i += 2)
  {
    const SExpr& name = items[i];
    const SExpr& spec = items[i + 1];
    if (!name.is_symbol() || name.is_keyword())
    {
      throw MalformedSpecifierList("expected a variable name, got " + print(name));
    }
    // Sort positions must be tagged: a keyword symbol or a specifier list.
    if (!(spec.is_keyword() || (spec.is_list() && spec.size() > 0)))
    {
      throw MalformedSpecifierList("sort of " + name.symbol_name()
                                   + " must be a keyword or specifier list, got "
                                   + print(spec));
    }
    if (auto cmd = scratch.declare(name.symbol_name(), registry.resolve(spec)))
    {
      commands.push_back(std::move(*cmd));
    }
  }
  *this = std::move(scratch);
  return commands;
}

void
EnvStack::push_level()
{
  d_levels.emplace_back();
}

void
EnvStack::pop_level()
{
  if (d_levels.size() <= 1) throw PopOnBaseLevel();
  d_levels.pop_back();
}

void
EnvStack::record(SExpr command)
{
  d_levels.back().commands.push_back(std::move(command));
}

const std::vector<SExpr>&
EnvStack::commands(std::size_t level) const
{
  return d_levels.at(level).commands;
}

std::vector<Declaration>
EnvStack::declarations() const
{
  std::vector<Declaration> out;
  for (const Level& level : d_levels)
  {
    for (const auto& [_, decl] : level.names) out.push_back(decl);
  }
  std::sort(out.begin(), out.end(), [](const Declaration& a, const Declaration& b) {
    return a.ordinal < b.ordinal;
  });
  return out;
}

}  // namespace smtkit
