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

// Many-sorted type system: sorts, function ranks, and the registry that
// resolves sort specifiers and owns user-defined enumeration and tuple sorts.
//
// Sort specifiers are S-expressions:
//   int, :int, Int                  non-parametric sort (case-insensitive)
//   (:seq :int), (Array Int Bool)   parametric sort
//   (_ BitVec 8), (:bitvec 8)       indexed sort
//   (:fn (:int :bool) :string)      function rank

#ifndef SMTKIT_SORT_HPP
#define SMTKIT_SORT_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "smtkit/sexpr.hpp"

namespace smtkit {

struct SortNode;

/** An immutable, cheaply copyable sort. */
class Sort
{
 public:
  enum class Kind
  {
    builtin,
    indexed,
    parametric,
    enumeration,
    tuple,
  };

  static Sort builtin(std::string name);
  static Sort indexed(std::string name, std::vector<SExpr> indices);
  static Sort parametric(std::string name, std::vector<Sort> args);

  static Sort boolean() { return builtin("Bool"); }
  static Sort integer() { return builtin("Int"); }
  static Sort real() { return builtin("Real"); }
  static Sort string() { return builtin("String"); }
  static Sort bitvec(std::size_t width);
  static Sort seq(Sort element);
  static Sort array(Sort index, Sort element);

  Kind kind() const;
  const std::string& name() const;
  const std::vector<SExpr>& indices() const;
  const std::vector<Sort>& args() const;
  const SortNode& node() const { return *d_node; }

  bool is_bool() const { return is_builtin("Bool"); }
  bool is_int() const { return is_builtin("Int"); }
  bool is_real() const { return is_builtin("Real"); }
  bool is_numeric() const { return is_int() || is_real(); }
  bool is_string() const { return is_builtin("String"); }
  bool is_reglan() const { return is_builtin("RegLan"); }
  bool is_bitvec() const;
  bool is_seq() const;
  bool is_array() const;
  bool is_enum() const { return kind() == Kind::enumeration; }
  bool is_tuple() const { return kind() == Kind::tuple; }
  /** Width of a bit-vector sort. Precondition: is_bitvec(). */
  std::size_t bv_width() const;

  std::string to_string() const;

  friend bool operator==(const Sort& a, const Sort& b);

 private:
  explicit Sort(std::shared_ptr<const SortNode> node) : d_node(std::move(node)) {}
  bool is_builtin(std::string_view n) const;

  std::shared_ptr<const SortNode> d_node;

  friend class SortRegistry;
};

struct TupleField
{
  std::string name;
  std::string accessor;
  Sort sort;
};

struct SortNode
{
  Sort::Kind kind = Sort::Kind::builtin;
  std::string name;
  std::vector<SExpr> indices;
  std::vector<Sort> args;
  // enumeration sorts: labels[i] is represented by constructors[i]
  std::vector<std::string> labels;
  std::vector<std::string> constructors;
  // tuple sorts
  std::string tuple_constructor;
  std::vector<TupleField> fields;
};

/** Parameter sorts plus return sort of a declared function. */
struct FuncRank
{
  std::vector<Sort> params;
  Sort result;

  friend bool operator==(const FuncRank&, const FuncRank&) = default;
};

using Signature = std::variant<Sort, FuncRank>;

std::string to_string(const Signature& sig);

/** SMT-LIB2 concrete syntax for a resolved sort. */
SExpr emit_sort(const Sort& sort);

/** Specifier form of a signature; resolves back to the same signature. */
SExpr emit_specifier(const Signature& sig);

/**
 * A datatype function known to the registry: an enumeration member, a tuple
 * constructor or a tuple field accessor.
 */
struct DatatypeFunction
{
  enum class Role
  {
    enum_member,
    tuple_constructor,
    tuple_accessor,
  };
  Role role;
  Sort sort;
  /** Member or field index within the sort. */
  std::size_t index = 0;
};

class SortRegistry
{
 public:
  SortRegistry();

  /** Resolves a specifier to a sort or a function rank. */
  Signature resolve(const SExpr& spec) const;
  /** Resolves a specifier that must denote a sort (not a rank). */
  Sort resolve_sort(const SExpr& spec) const;

  /**
   * Registers an enumeration sort. Members may be integers, symbols or
   * strings; labels that are not plain solver symbols become constructors
   * named `<SORT>.<label>`. Returns the declare-datatypes command, which is
   * also queued in pending().
   */
  SExpr register_enum_sort(std::string_view name, const std::vector<SExpr>& members);

  /**
   * Registers a single-constructor tuple sort. The constructor is named after
   * the sort and each field gets an accessor `<SORT>.<field>`.
   */
  SExpr register_tuple_sort(std::string_view name,
                            const std::vector<std::pair<std::string, SExpr>>& fields);

  /** Looks up a registered user sort by (case-insensitive) name. */
  std::optional<Sort> find_user_sort(std::string_view name) const;
  /** Looks up a constructor or accessor by its solver-side name. */
  std::optional<DatatypeFunction> find_function(std::string_view solver_name) const;
  /** The constructor name representing `label` in enumeration sort `sort`. */
  std::optional<std::string> enum_constructor(const Sort& sort, std::string_view label) const;

  /** Declaration commands not yet handed to a solver. */
  const std::vector<SExpr>& pending() const { return d_pending; }
  std::vector<SExpr> take_pending();

  /** Registered user sort names in registration order. */
  std::vector<std::string> user_sort_names() const;

 private:
  struct BuiltinInfo
  {
    std::string canonical;
    std::size_t params = 0;
    std::size_t indices = 0;
  };

  Sort resolve_symbol(const std::string& raw) const;
  Sort resolve_list(const SExpr& spec) const;
  std::string claim_name(std::string_view name) const;

  std::map<std::string, BuiltinInfo> d_builtins;
  std::map<std::string, Sort> d_user;
  std::vector<std::string> d_user_order;
  std::map<std::string, DatatypeFunction, std::less<>> d_functions;
  std::vector<SExpr> d_pending;
};

/** Case-folded lookup key of a sort name: tag/package prefix and colon dropped. */
std::string sort_key(std::string_view name);

}  // namespace smtkit

#endif
