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

// Sort-checked terms. build() turns a constraint S-expression into a
// TypedTerm, resolving symbols against (in order) enclosing binders, declared
// constants and functions, the operator table and registered datatype
// constructors. lower() renders a TypedTerm back into SMT-LIB2 syntax.

#ifndef SMTKIT_TERM_HPP
#define SMTKIT_TERM_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smtkit/scope_env.hpp"
#include "smtkit/sexpr.hpp"
#include "smtkit/sort.hpp"

namespace smtkit {

struct TypedTerm
{
  enum class Kind
  {
    variable,
    literal,
    application,
    binder,
  };

  Kind kind = Kind::literal;
  /** Variable name, emitted function/operator name, or binder keyword. */
  std::string head;
  /** Lowered form of a literal. */
  SExpr literal;
  /** Indices of an indexed operator such as (_ extract 7 0). */
  std::vector<SExpr> indices;
  /** Variables introduced by a binder. */
  std::vector<std::pair<std::string, Sort>> bound;
  std::vector<TypedTerm> children;
  Sort sort = Sort::boolean();
  /** The source literal a literal node was read from, for context coercion. */
  std::optional<SExpr> origin;

  friend bool operator==(const TypedTerm&, const TypedTerm&) = default;
};

/** Stack of binder scopes; the innermost binding of a name wins. */
class BoundScope
{
 public:
  void push(std::vector<std::pair<std::string, Sort>> vars)
  {
    d_frames.push_back(std::move(vars));
  }
  void pop() { d_frames.pop_back(); }
  const Sort* find(std::string_view name) const;
  bool empty() const { return d_frames.empty(); }

 private:
  std::vector<std::vector<std::pair<std::string, Sort>>> d_frames;
};

enum class OpFamily
{
  constant_bool,
  bool_fold,
  bool_xor,
  bool_not,
  bool_implies,
  ite,
  equality,
  arith_fold,
  arith_minus,
  arith_int_binary,
  arith_real_div,
  arith_abs,
  arith_compare,
  to_real,
  to_int,
  is_int,
  bv_fold,
  bv_binary,
  bv_unary,
  bv_compare,
  bv_concat,
  bv_extract,
  bv_extend,
  seq_unit,
  seq_concat,
  seq_len,
  seq_at,
  seq_empty,
  seq_contains,
  str_to_re,
  str_in_re,
  re_star,
  re_fold,
  array_select,
  array_store,
  quantifier,
};

struct OperatorEntry
{
  std::string name;
  std::vector<std::string> aliases;
  std::size_t min_args = 0;
  /** nullopt for variadic operators. */
  std::optional<std::size_t> max_args;
  /** Number of indices for indexed operators written (_ name i ...). */
  std::size_t num_indices = 0;
  OpFamily family = OpFamily::bool_fold;
  /** Human-readable signature for the operator document. */
  std::string signature;
};

const std::vector<OperatorEntry>& operator_table();
/** Case-insensitive lookup over canonical names and aliases. */
const OperatorEntry& operator_lookup(std::string_view name);
/** Plain-text description of every operator, alias and signature. */
std::string operator_document();

/**
 * Builds a sort-checked term. When `expected` is given, literals are read at
 * that sort where possible (enumeration labels, Int literals in Real
 * positions, seq.empty).
 */
TypedTerm build(const SExpr& form,
                const EnvStack& env,
                const SortRegistry& registry,
                const Sort* expected = nullptr);

TypedTerm build(const SExpr& form,
                const EnvStack& env,
                const SortRegistry& registry,
                BoundScope& bound,
                const Sort* expected = nullptr);

SExpr lower(const TypedTerm& term);

/**
 * SMT-LIB2 string literal for UTF-8 text: code points outside printable
 * ASCII are written as \u{...} escapes.
 */
SExpr encode_string_literal(std::string_view utf8);

}  // namespace smtkit

#endif
