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

// S-expressions: the one syntax shared by constraints, data files and the
// SMT-LIB2 wire protocol.
//
// Lexical conventions follow SMT-LIB2 with two additions needed for lossless
// host values: a standalone `-5` is a negative integer literal and `p/q` is a
// rational literal. `;` starts a comment running to end of line.

#ifndef SMTKIT_SEXPR_HPP
#define SMTKIT_SEXPR_HPP

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "smtkit/errors.hpp"

namespace smtkit {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/* -------------------------------------------------------------------------- */
/* Nodes                                                                      */
/* -------------------------------------------------------------------------- */

/**
 * A symbol. `quoted` records that the symbol was (or must be) written in
 * `|...|` form; `|abc|` and `abc` denote the same symbol, so equality only
 * compares names.
 */
struct Symbol
{
  std::string name;
  bool quoted = false;
};
inline bool operator==(const Symbol& a, const Symbol& b) { return a.name == b.name; }

struct IntLiteral
{
  BigInt value;
  bool operator==(const IntLiteral&) const = default;
};

/** Always in lowest terms with a strictly positive denominator. */
struct RationalLiteral
{
  BigInt numerator;
  BigInt denominator;
  bool operator==(const RationalLiteral&) const = default;
};

/** Decimal numeral; the text is kept for bit-exact reprinting. */
struct DecimalLiteral
{
  std::string text;
  BigRational value() const;
  bool operator==(const DecimalLiteral&) const = default;
};

struct StringLiteral
{
  std::string value;
  bool operator==(const StringLiteral&) const = default;
};

/** `value < 2^width`, `width > 0`. */
struct BitvecLiteral
{
  std::size_t width = 1;
  BigInt value;
  bool operator==(const BitvecLiteral&) const = default;
};

class SExpr;

struct List
{
  std::vector<SExpr> items;
};
bool operator==(const List& a, const List& b);

class SExpr
{
 public:
  using Node = std::variant<Symbol,
                            IntLiteral,
                            RationalLiteral,
                            DecimalLiteral,
                            StringLiteral,
                            BitvecLiteral,
                            List>;

  SExpr() : d_node(List{}) {}
  SExpr(Node node) : d_node(std::move(node)) {}

  static SExpr symbol(std::string name, bool quoted = false);
  static SExpr integer(BigInt value);
  static SExpr rational(BigInt numerator, BigInt denominator);
  static SExpr decimal(std::string text);
  static SExpr string(std::string value);
  static SExpr bitvec(std::size_t width, BigInt value);
  static SExpr list(std::vector<SExpr> items = {});
  static SExpr list(std::initializer_list<SExpr> items);

  const Node& node() const { return d_node; }

  bool is_symbol() const { return std::holds_alternative<Symbol>(d_node); }
  /** True iff this is a symbol spelled exactly `name`. */
  bool is_symbol(std::string_view name) const;
  bool is_keyword() const;
  bool is_int() const { return std::holds_alternative<IntLiteral>(d_node); }
  bool is_rational() const { return std::holds_alternative<RationalLiteral>(d_node); }
  bool is_decimal() const { return std::holds_alternative<DecimalLiteral>(d_node); }
  bool is_string() const { return std::holds_alternative<StringLiteral>(d_node); }
  bool is_bitvec() const { return std::holds_alternative<BitvecLiteral>(d_node); }
  bool is_list() const { return std::holds_alternative<List>(d_node); }
  bool is_atom() const { return !is_list(); }

  const std::string& symbol_name() const { return std::get<Symbol>(d_node).name; }
  const Symbol& as_symbol() const { return std::get<Symbol>(d_node); }
  const BigInt& int_value() const { return std::get<IntLiteral>(d_node).value; }
  const RationalLiteral& as_rational() const { return std::get<RationalLiteral>(d_node); }
  const DecimalLiteral& as_decimal() const { return std::get<DecimalLiteral>(d_node); }
  const std::string& string_value() const { return std::get<StringLiteral>(d_node).value; }
  const BitvecLiteral& as_bitvec() const { return std::get<BitvecLiteral>(d_node); }
  const std::vector<SExpr>& items() const { return std::get<List>(d_node).items; }
  std::vector<SExpr>& items() { return std::get<List>(d_node).items; }

  std::size_t size() const { return is_list() ? items().size() : 0; }
  const SExpr& operator[](std::size_t i) const { return items().at(i); }
  /** True iff this is a nonempty list whose first item is symbol `name`. */
  bool head_is(std::string_view name) const;

  friend bool operator==(const SExpr& a, const SExpr& b) { return a.d_node == b.d_node; }

 private:
  Node d_node;
};

inline SExpr sym(std::string name) { return SExpr::symbol(std::move(name)); }
inline SExpr num(long long v) { return SExpr::integer(BigInt(v)); }

/* -------------------------------------------------------------------------- */
/* Reading                                                                    */
/* -------------------------------------------------------------------------- */

/** A pull-based character source. Both calls return -1 at end of input. */
class CharSource
{
 public:
  virtual ~CharSource() = default;
  virtual int peek() = 0;
  virtual int get() = 0;
};

class StringSource : public CharSource
{
 public:
  explicit StringSource(std::string_view text) : d_text(text) {}
  int peek() override;
  int get() override;
  /** Characters not yet consumed. */
  std::string_view rest() const { return d_text.substr(d_pos); }

 private:
  std::string_view d_text;
  std::size_t d_pos = 0;
};

/**
 * Reads balanced forms from a CharSource one at a time. Whitespace and
 * comments before a form are skipped; nothing after its closing delimiter is
 * consumed.
 */
class Reader
{
 public:
  explicit Reader(CharSource& source) : d_source(source) {}

  /** The next form, or nullopt if the source ends before one starts. */
  std::optional<SExpr> next();

  SourcePosition position() const { return d_pos; }

 private:
  int peek() { return d_source.peek(); }
  int get();
  void skip_blank();
  SExpr read_atom();
  SExpr read_string();
  SExpr read_quoted_symbol();
  [[noreturn]] void premature_end();

  CharSource& d_source;
  SourcePosition d_pos;
};

/** All top-level forms of `text`. */
std::vector<SExpr> parse(std::string_view text);
/** Exactly one form; SyntaxError otherwise. */
SExpr parse_one(std::string_view text);
/** One form from `source`; StreamClosed if it ends before or within it. */
SExpr read_one_form(CharSource& source);

/* -------------------------------------------------------------------------- */
/* Printing                                                                   */
/* -------------------------------------------------------------------------- */

std::string print(const SExpr& form);
std::ostream& operator<<(std::ostream& os, const SExpr& form);

/** True iff `name` can be written without `|...|` quoting. */
bool is_simple_symbol(std::string_view name);

}  // namespace smtkit

#endif
