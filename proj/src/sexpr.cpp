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

#include "smtkit/sexpr.hpp"

#include <cassert>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace smtkit {

namespace {

bool is_blank(int c)
{
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_delimiter(int c)
{
  return c < 0 || is_blank(c) || c == '(' || c == ')' || c == '"' || c == ';'
         || c == '|';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool all_digits(std::string_view s)
{
  if (s.empty()) return false;
  for (char c : s)
  {
    if (!is_digit(c)) return false;
  }
  return true;
}

int hex_value(char c)
{
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

enum class AtomKind
{
  symbol,
  integer,
  rational,
  decimal,
  bitvec,
  malformed,
};

/* Classification of an unquoted atom's spelling. Digit-led spellings that are
 * not numerals (solvers emit things like `0ms` in statistics) are read as
 * symbols. */
AtomKind classify(std::string_view text)
{
  if (text.empty()) return AtomKind::malformed;
  if (text[0] == '#')
  {
    if (text.size() < 3) return AtomKind::malformed;
    std::string_view digits = text.substr(2);
    if (text[1] == 'b')
    {
      for (char c : digits)
      {
        if (c != '0' && c != '1') return AtomKind::malformed;
      }
      return AtomKind::bitvec;
    }
    if (text[1] == 'x')
    {
      for (char c : digits)
      {
        if (hex_value(c) < 0) return AtomKind::malformed;
      }
      return AtomKind::bitvec;
    }
    return AtomKind::malformed;
  }
  std::string_view body = text;
  if (body[0] == '-') body.remove_prefix(1);
  if (body.empty() || !is_digit(body[0])) return AtomKind::symbol;
  if (all_digits(body)) return AtomKind::integer;
  if (auto slash = body.find('/'); slash != std::string_view::npos)
  {
    if (all_digits(body.substr(0, slash)) && all_digits(body.substr(slash + 1)))
    {
      return AtomKind::rational;
    }
    return AtomKind::symbol;
  }
  if (auto dot = body.find('.'); dot != std::string_view::npos)
  {
    if (all_digits(body.substr(0, dot)) && all_digits(body.substr(dot + 1)))
    {
      return AtomKind::decimal;
    }
  }
  return AtomKind::symbol;
}

bool is_symbol_char(unsigned char c)
{
  if (c >= 0x80) return true;  // non-ASCII passes through unvalidated
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'))
  {
    return true;
  }
  switch (c)
  {
    case '~': case '!': case '@': case '$': case '%': case '^': case '&':
    case '*': case '_': case '-': case '+': case '=': case '<': case '>':
    case '.': case '?': case '/': case ':':
      return true;
    default: return false;
  }
}

BigInt parse_digits(std::string_view digits, unsigned base)
{
  BigInt v = 0;
  for (char c : digits)
  {
    v *= base;
    v += hex_value(c);
  }
  return v;
}

// Decimal digits with an optional leading '-'. Leading zeros are not octal.
BigInt parse_signed(std::string_view text)
{
  bool negative = !text.empty() && text[0] == '-';
  BigInt v = parse_digits(negative ? text.substr(1) : text, 10);
  return negative ? BigInt(-v) : v;
}

// Boost's two-argument rational constructor rejects negative denominators.
BigRational normalized(const BigInt& num, const BigInt& den)
{
  return den < 0 ? BigRational(BigInt(-num), BigInt(-den)) : BigRational(num, den);
}

void print_to(std::ostream& os, const SExpr& form);

struct Printer
{
  std::ostream& os;

  void operator()(const Symbol& s) const
  {
    if (s.quoted || !is_simple_symbol(s.name))
    {
      os << '|' << s.name << '|';
    }
    else
    {
      os << s.name;
    }
  }
  void operator()(const IntLiteral& i) const { os << i.value; }
  void operator()(const RationalLiteral& r) const
  {
    os << r.numerator << '/' << r.denominator;
  }
  void operator()(const DecimalLiteral& d) const { os << d.text; }
  void operator()(const StringLiteral& s) const
  {
    os << '"';
    for (char c : s.value)
    {
      if (c == '"') os << '"';
      os << c;
    }
    os << '"';
  }
  void operator()(const BitvecLiteral& b) const
  {
    std::string bits(b.width, '0');
    for (std::size_t i = 0; i < b.width; ++i)
    {
      if (boost::multiprecision::bit_test(b.value, static_cast<unsigned>(i)))
      {
        bits[b.width - 1 - i] = '1';
      }
    }
    os << "#b" << bits;
  }
  void operator()(const List& l) const
  {
    os << '(';
    bool first = true;
    for (const SExpr& item : l.items)
    {
      if (!first) os << ' ';
      first = false;
      print_to(os, item);
    }
    os << ')';
  }
};

void print_to(std::ostream& os, const SExpr& form)
{
  std::visit(Printer{os}, form.node());
}

}  // namespace

/* -------------------------------------------------------------------------- */

BigRational
DecimalLiteral::value() const
{
  std::string_view t = text;
  bool negative = !t.empty() && t[0] == '-';
  if (negative) t.remove_prefix(1);
  auto dot = t.find('.');
  std::string_view whole = t.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : t.substr(dot + 1);
  BigInt num = parse_digits(whole, 10);
  BigInt den = 1;
  for (char c : frac)
  {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  if (negative) num = -num;
  return normalized(num, den);
}

bool
operator==(const List& a, const List& b)
{
  return a.items == b.items;
}

SExpr
SExpr::symbol(std::string name, bool quoted)
{
  if (name.find('|') != std::string::npos)
  {
    throw std::invalid_argument("symbol names cannot contain '|': " + name);
  }
  return SExpr(Symbol{std::move(name), quoted});
}

SExpr
SExpr::integer(BigInt value)
{
  return SExpr(IntLiteral{std::move(value)});
}

SExpr
SExpr::rational(BigInt numerator, BigInt denominator)
{
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  BigRational q = normalized(numerator, denominator);
  return SExpr(RationalLiteral{boost::multiprecision::numerator(q),
                               boost::multiprecision::denominator(q)});
}

SExpr
SExpr::decimal(std::string text)
{
  if (classify(text) != AtomKind::decimal)
  {
    throw std::invalid_argument("not a decimal numeral: " + text);
  }
  return SExpr(DecimalLiteral{std::move(text)});
}

SExpr
SExpr::string(std::string value)
{
  return SExpr(StringLiteral{std::move(value)});
}

SExpr
SExpr::bitvec(std::size_t width, BigInt value)
{
  if (width == 0) throw std::invalid_argument("bit-vector width must be positive");
  if (value < 0 || (value != 0 && msb(value) >= width))
  {
    throw std::invalid_argument("bit-vector value does not fit its width");
  }
  return SExpr(BitvecLiteral{width, std::move(value)});
}

SExpr
SExpr::list(std::vector<SExpr> items)
{
  return SExpr(List{std::move(items)});
}

SExpr
SExpr::list(std::initializer_list<SExpr> items)
{
  return SExpr(List{std::vector<SExpr>(items)});
}

bool
SExpr::is_symbol(std::string_view name) const
{
  const auto* s = std::get_if<Symbol>(&d_node);
  return s != nullptr && s->name == name;
}

bool
SExpr::is_keyword() const
{
  const auto* s = std::get_if<Symbol>(&d_node);
  return s != nullptr && s->name.size() > 1 && s->name[0] == ':';
}

bool
SExpr::head_is(std::string_view name) const
{
  return is_list() && !items().empty() && items().front().is_symbol(name);
}

/* -------------------------------------------------------------------------- */

int
StringSource::peek()
{
  return d_pos < d_text.size() ? static_cast<unsigned char>(d_text[d_pos]) : -1;
}

int
StringSource::get()
{
  return d_pos < d_text.size() ? static_cast<unsigned char>(d_text[d_pos++]) : -1;
}

int
Reader::get()
{
  int c = d_source.get();
  if (c == '\n')
  {
    ++d_pos.line;
    d_pos.column = 1;
  }
  else if (c >= 0)
  {
    ++d_pos.column;
  }
  return c;
}

void
Reader::premature_end()
{
  throw StreamClosed("input ended inside a form at " + std::to_string(d_pos.line)
                     + ":" + std::to_string(d_pos.column));
}

void
Reader::skip_blank()
{
  for (;;)
  {
    int c = peek();
    if (is_blank(c))
    {
      get();
    }
    else if (c == ';')
    {
      while (c >= 0 && c != '\n') c = get();
    }
    else
    {
      return;
    }
  }
}

SExpr
Reader::read_string()
{
  get();  // opening quote
  std::string value;
  for (;;)
  {
    int c = get();
    if (c < 0) premature_end();
    if (c == '"')
    {
      if (peek() == '"')
      {
        get();
        value.push_back('"');
        continue;
      }
      return SExpr::string(std::move(value));
    }
    value.push_back(static_cast<char>(c));
  }
}

SExpr
Reader::read_quoted_symbol()
{
  get();  // opening bar
  std::string name;
  for (;;)
  {
    int c = get();
    if (c < 0) premature_end();
    if (c == '|') return SExpr::symbol(std::move(name), true);
    name.push_back(static_cast<char>(c));
  }
}

SExpr
Reader::read_atom()
{
  SourcePosition start = d_pos;
  std::string text;
  while (!is_delimiter(peek())) text.push_back(static_cast<char>(get()));

  switch (classify(text))
  {
    case AtomKind::symbol: return SExpr::symbol(std::move(text));
    case AtomKind::integer: return SExpr::integer(parse_signed(text));
    case AtomKind::rational:
    {
      auto slash = text.find('/');
      BigInt den = parse_digits(std::string_view(text).substr(slash + 1), 10);
      if (den == 0) throw SyntaxError("zero denominator in " + text, start);
      return SExpr::rational(parse_signed(std::string_view(text).substr(0, slash)), den);
    }
    case AtomKind::decimal: return SExpr(DecimalLiteral{std::move(text)});
    case AtomKind::bitvec:
    {
      std::string_view digits = std::string_view(text).substr(2);
      if (text[1] == 'b')
      {
        return SExpr(BitvecLiteral{digits.size(), parse_digits(digits, 2)});
      }
      return SExpr(BitvecLiteral{digits.size() * 4, parse_digits(digits, 16)});
    }
    case AtomKind::malformed: break;
  }
  throw SyntaxError("malformed literal '" + text + "'", start);
}

std::optional<SExpr>
Reader::next()
{
  skip_blank();
  if (peek() < 0) return std::nullopt;

  std::vector<std::vector<SExpr>> open;
  for (;;)
  {
    skip_blank();
    int c = peek();
    if (c < 0) premature_end();

    SExpr done;
    if (c == '(')
    {
      get();
      open.emplace_back();
      continue;
    }
    if (c == ')')
    {
      if (open.empty()) throw SyntaxError("unbalanced ')'", d_pos);
      get();
      done = SExpr::list(std::move(open.back()));
      open.pop_back();
    }
    else if (c == '"')
    {
      done = read_string();
    }
    else if (c == '|')
    {
      done = read_quoted_symbol();
    }
    else
    {
      done = read_atom();
    }

    if (open.empty()) return done;
    open.back().push_back(std::move(done));
  }
}

std::vector<SExpr>
parse(std::string_view text)
{
  StringSource source(text);
  Reader reader(source);
  std::vector<SExpr> forms;
  try
  {
    while (auto form = reader.next()) forms.push_back(std::move(*form));
  }
  catch (const StreamClosed&)
  {
    throw SyntaxError("unexpected end of input", reader.position());
  }
  return forms;
}

SExpr
parse_one(std::string_view text)
{
  auto forms = parse(text);
  if (forms.size() != 1)
  {
    throw SyntaxError("expected exactly one form, found " + std::to_string(forms.size()),
                      SourcePosition{});
  }
  return std::move(forms.front());
}

SExpr
read_one_form(CharSource& source)
{
  Reader reader(source);
  auto form = reader.next();
  if (!form) throw StreamClosed("input ended before a form started");
  return std::move(*form);
}

/* -------------------------------------------------------------------------- */

bool
is_simple_symbol(std::string_view name)
{
  if (name.empty() || is_digit(name[0])) return false;
  for (char c : name)
  {
    if (!is_symbol_char(static_cast<unsigned char>(c))) return false;
  }
  return classify(name) == AtomKind::symbol;
}

std::string
print(const SExpr& form)
{
  std::ostringstream os;
  print_to(os, form);
  return os.str();
}

std::ostream&
operator<<(std::ostream& os, const SExpr& form)
{
  print_to(os, form);
  return os;
}

}  // namespace smtkit
