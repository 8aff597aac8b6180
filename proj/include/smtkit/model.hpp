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

// Decoding of solver models and values into host values.

#ifndef SMTKIT_MODEL_HPP
#define SMTKIT_MODEL_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "smtkit/scope_env.hpp"
#include "smtkit/sexpr.hpp"
#include "smtkit/sort.hpp"

namespace smtkit {

struct HostValue;

/** A real known only approximately (algebraic numbers). */
struct Approximate
{
  double value = 0;
  bool operator==(const Approximate&) const = default;
};

struct Bitvector
{
  std::size_t width = 0;
  BigInt value;
  bool operator==(const Bitvector&) const = default;
};

struct Sequence
{
  std::vector<HostValue> elements;
  bool operator==(const Sequence&) const;
};

struct EnumMember
{
  std::string sort;
  std::string label;
  bool operator==(const EnumMember&) const = default;
};

struct TupleValue
{
  std::string sort;
  /** (field name, value) in declaration order. */
  std::vector<std::pair<std::string, HostValue>> fields;
  bool operator==(const TupleValue&) const;
};

/** Finite argument-tuple map plus the value everywhere else. */
struct FunctionTable
{
  struct Entry
  {
    std::vector<HostValue> args;
    std::shared_ptr<const HostValue> value;
  };

  std::vector<Entry> entries;
  std::shared_ptr<const HostValue> fallback;

  /** First entry matching `args`, else the fallback. */
  const HostValue& apply(const std::vector<HostValue>& args) const;
  bool operator==(const FunctionTable&) const;
};

struct HostValue
{
  using Value = std::variant<bool,
                             BigInt,
                             BigRational,
                             Approximate,
                             std::string,
                             Bitvector,
                             Sequence,
                             EnumMember,
                             TupleValue,
                             FunctionTable>;
  Value value;

  static HostValue boolean(bool b) { return {b}; }
  static HostValue integer(BigInt v) { return {std::move(v)}; }
  static HostValue rational(BigRational v) { return {std::move(v)}; }
  static HostValue approximate(double v) { return {Approximate{v}}; }
  static HostValue text(std::string s) { return {std::move(s)}; }

  template <typename T>
  bool is() const
  {
    return std::holds_alternative<T>(value);
  }
  template <typename T>
  const T& as() const
  {
    return std::get<T>(value);
  }
  bool is_approximate() const { return is<Approximate>(); }

  bool operator==(const HostValue&) const = default;
};

/** Readable S-expression rendering; function tables use a :default key. */
SExpr to_sexpr(const HostValue& v);
std::ostream& operator<<(std::ostream& os, const HostValue& v);

struct ModelEntry
{
  std::string name;
  Signature signature;
  HostValue value;
  /** Not declared through the environment (solver-internal). */
  bool auxiliary = false;
};

struct Model
{
  std::vector<ModelEntry> entries;

  const ModelEntry* find(std::string_view name) const;
  bool empty() const { return entries.empty(); }
};

/**
 * Decodes a get-model response, with or without a leading `model` symbol.
 * Entries of undeclared auxiliaries that cannot be decoded are dropped.
 */
Model decode_model(const SExpr& raw, const SortRegistry& registry, const EnvStack& env);

HostValue decode_value(const SExpr& form, const Sort& sort, const SortRegistry& registry);

/**
 * Decodes a function body. Conditions may be equalities between parameters
 * and values (conjoined with `and`) or Boolean parameters, possibly negated;
 * the first matching arm wins and the final else branch is the default.
 */
FunctionTable decode_fn_interp(const std::vector<std::pair<std::string, Sort>>& params,
                               const Sort& result,
                               const SExpr& body,
                               const SortRegistry& registry);

/** Declared names with their values, in declaration order. */
std::vector<std::pair<std::string, HostValue>> model_as_assignment(const Model& model,
                                                                   const EnvStack& env);

/** ((name value) ...) rendering of model_as_assignment. */
SExpr assignment_form(const std::vector<std::pair<std::string, HostValue>>& bindings);

/** Decodes SMT-LIB2 string literal escapes (\u{h..}, \udddd) to UTF-8. */
std::string decode_string_literal(std::string_view text);

/**
 * The `index`-th (1-based, ascending) real root of the polynomial with the
 * given coefficients (constant term first), to double precision.
 */
double real_root(const std::vector<BigRational>& coefficients, std::size_t index);

}  // namespace smtkit

#endif
