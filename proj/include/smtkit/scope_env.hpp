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

#ifndef SMTKIT_SCOPE_ENV_HPP
#define SMTKIT_SCOPE_ENV_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smtkit/sexpr.hpp"
#include "smtkit/sort.hpp"

namespace smtkit {

struct Declaration
{
  std::string name;
  Signature signature;
  /** Assertion level the declaration lives at. */
  std::size_t level = 0;
  /** Position in overall declaration order. */
  std::size_t ordinal = 0;

  bool is_function() const { return std::holds_alternative<FuncRank>(signature); }
  friend bool operator==(const Declaration&, const Declaration&) = default;
};

/** The SMT-LIB2 declare-const / declare-fun command for a declaration. */
SExpr declaration_command(const std::string& name, const Signature& sig);

/**
 * Stack of assertion levels mapping names to declarations. A name is
 * declared at most once across all live levels; names are case-sensitive.
 * Level 0 always exists.
 */
class EnvStack
{
 public:
  EnvStack();

  /**
   * Declares `name` at the current level and returns the command to send.
   * Redeclaring with an identical signature is a no-op returning nullopt.
   */
  std::optional<SExpr> declare(const std::string& name, const Signature& sig);

  /**
   * Processes an inline specifier list `(x :bool y :int ...)`. Either every
   * pair is declared or, on error, the stack is left unchanged.
   */
  std::vector<SExpr> merge_inline_specifiers(const SExpr& specifiers,
                                             const SortRegistry& registry);

  const Declaration& lookup(std::string_view name) const;
  const Declaration* find(std::string_view name) const;

  void push_level();
  void pop_level();
  std::size_t depth() const { return d_levels.size(); }

  /** Records an assertion command at the current level. */
  void record(SExpr command);
  /** Declaration and assertion commands issued at `level`, in order. */
  const std::vector<SExpr>& commands(std::size_t level) const;

  /** Live declarations in declaration order. */
  std::vector<Declaration> declarations() const;

  friend bool operator==(const EnvStack&, const EnvStack&) = default;

 private:
  struct Level
  {
    std::map<std::string, Declaration, std::less<>> names;
    std::vector<SExpr> commands;
    friend bool operator==(const Level&, const Level&) = default;
  };

  std::vector<Level> d_levels;
  std::size_t d_next_ordinal = 0;
};

}  // namespace smtkit

#endif
