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

#include "smtkit/model.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "smtkit/errors.hpp"

namespace smtkit {

bool
Sequence::operator==(const Sequence& other) const
{
  return elements == other.elements;
}

bool
TupleValue::operator==(const TupleValue& other) const
{
  return sort == other.sort && fields == other.fields;
}

const HostValue&
FunctionTable::apply(const std::vector<HostValue>& args) const
{
  for (const Entry& e : entries)
  {
    if (e.args == args) return *e.value;
  }
  return *fallback;
}

bool
FunctionTable::operator==(const FunctionTable& other) const
{
  if (entries.size() != other.entries.size()) return false;
  for (std::size_t i = 0; i < entries.size(); ++i)
  {
    if (entries[i].args != other.entries[i].args) return false;
    if (!(*entries[i].value == *other.entries[i].value)) return false;
  }
  if (!fallback || !other.fallback) return !fallback && !other.fallback;
  return *fallback == *other.fallback;
}

namespace {

SExpr rational_sexpr(const BigRational& r)
{
  return SExpr::rational(numerator(r), denominator(r));
}

std::string format_double(double d)
{
  std::ostringstream os;
  os << std::fixed << std::setprecision(17) << d;
  std::string s = os.str();
  while (s.size() > 2 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

}  // namespace

SExpr
to_sexpr(const HostValue& v)
{
  return std::visit(
      [](const auto& x) -> SExpr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>)
        {
          return sym(x ? "true" : "false");
        }
        else if constexpr (std::is_same_v<T, BigInt>)
        {
          return SExpr::integer(x);
        }
        else if constexpr (std::is_same_v<T, BigRational>)
        {
          return rational_sexpr(x);
        }
        else if constexpr (std::is_same_v<T, Approximate>)
        {
          return SExpr::list({sym(":approx"), SExpr::decimal(format_double(x.value))});
        }
        else if constexpr (std::is_same_v<T, std::string>)
        {
          return SExpr::string(x);
        }
        else if constexpr (std::is_same_v<T, Bitvector>)
        {
          return SExpr::bitvec(x.width, x.value);
        }
        else if constexpr (std::is_same_v<T, Sequence>)
        {
          std::vector<SExpr> items;
          for (const HostValue& e : x.elements) items.push_back(to_sexpr(e));
          return SExpr::list(std::move(items));
        }
        else if constexpr (std::is_same_v<T, EnumMember>)
        {
          return SExpr::symbol(x.label, !is_simple_symbol(x.label));
        }
        else if constexpr (std::is_same_v<T, TupleValue>)
        {
          std::vector<SExpr> items{SExpr::symbol(x.sort)};
          for (const auto& [name, value] : x.fields)
          {
            items.push_back(SExpr::list({SExpr::symbol(name), to_sexpr(value)}));
          }
          return SExpr::list(std::move(items));
        }
        else
        {
          std::vector<SExpr> items;
          for (const FunctionTable::Entry& e : x.entries)
          {
            std::vector<SExpr> args;
            for (const HostValue& a : e.args) args.push_back(to_sexpr(a));
            items.push_back(SExpr::list({SExpr::list(std::move(args)), to_sexpr(*e.value)}));
          }
          items.push_back(SExpr::list({sym(":default"), to_sexpr(*x.fallback)}));
          return SExpr::list(std::move(items));
        }
      },
      v.value);
}

std::ostream&
operator<<(std::ostream& os, const HostValue& v)
{
  return os << to_sexpr(v);
}

const ModelEntry*
Model::find(std::string_view name) const
{
  for (const ModelEntry& e : entries)
  {
    if (e.name == name) return &e;
  }
  return nullptr;
}

/* -------------------------------------------------------------------------- */
/* Strings                                                                    */
/* -------------------------------------------------------------------------- */

namespace {

void append_utf8(std::string& out, std::uint32_t cp)
{
  if (cp < 0x80)
  {
    out.push_back(static_cast<char>(cp));
  }
  else if (cp < 0x800)
  {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  else if (cp < 0x10000)
  {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  else
  {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string
decode_string_literal(std::string_view text)
{
  std::string out;
  std::size_t i = 0;
  while (i < text.size())
  {
    if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == 'u')
    {
      // \u{h..h} with 1-5 digits, or \udddd with exactly four.
      if (i + 2 < text.size() && text[i + 2] == '{')
      {
        std::size_t close = text.find('}', i + 3);
        if (close != std::string_view::npos && close > i + 3 && close - (i + 3) <= 5
            && std::all_of(text.begin() + i + 3, text.begin() + close, is_hex))
        {
          append_utf8(out, std::stoul(std::string(text.substr(i + 3, close - i - 3)), nullptr, 16));
          i = close + 1;
          continue;
        }
      }
      else if (i + 6 <= text.size()
               && std::all_of(text.begin() + i + 2, text.begin() + i + 6, is_hex))
      {
        append_utf8(out, std::stoul(std::string(text.substr(i + 2, 4)), nullptr, 16));
        i += 6;
        continue;
      }
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

/* -------------------------------------------------------------------------- */
/* Algebraic numbers                                                          */
/* -------------------------------------------------------------------------- */

namespace {

using Poly = std::vector<BigRational>;

void trim(Poly& p)
{
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly derivative(const Poly& p)
{
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * BigRational(static_cast<long>(i)));
  trim(d);
  return d;
}

Poly remainder(Poly a, const Poly& b)
{
  trim(a);
  while (a.size() >= b.size() && !a.empty())
  {
    BigRational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

BigRational evaluate(const Poly& p, const BigRational& x)
{
  BigRational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<Poly> sturm_chain(const Poly& p)
{
  std::vector<Poly> chain{p, derivative(p)};
  while (!chain.back().empty())
  {
    Poly r = remainder(chain[chain.size() - 2], chain.back());
    for (BigRational& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  if (chain.back().empty()) chain.pop_back();
  return chain;
}

std::size_t sign_changes(const std::vector<Poly>& chain, const BigRational& x)
{
  std::size_t changes = 0;
  int last = 0;
  for (const Poly& p : chain)
  {
    BigRational v = evaluate(p, x);
    int s = v > 0 ? 1 : v < 0 ? -1 : 0;
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

double
real_root(const std::vector<BigRational>& coefficients, std::size_t index)
{
  Poly p = coefficients;
  trim(p);
  if (p.size() < 2 || index == 0)
  {
    throw UnsupportedInterpretation("root-obj", "constant polynomial or root index 0");
  }
  // Cauchy bound: every root lies in (-bound, bound).
  BigRational bound = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
  {
    BigRational r = abs(p[i] / p.back());
    if (r > bound) bound = r;
  }
  bound += 1;

  std::vector<Poly> chain = sturm_chain(p);
  BigRational lo = -bound;
  BigRational hi = bound;
  std::size_t base = sign_changes(chain, lo);
  auto roots_up_to = [&](const BigRational& x) { return base - sign_changes(chain, x); };
  if (roots_up_to(hi) < index)
  {
    throw UnsupportedInterpretation(
        "root-obj", "polynomial has fewer than " + std::to_string(index) + " real roots");
  }
  // Invariant: fewer than `index` roots in (lo_start, lo], at least `index` in (lo_start, hi].
  for (int iter = 0; iter < 200; ++iter)
  {
    BigRational mid = (lo + hi) / 2;
    if (roots_up_to(mid) >= index)
    {
      hi = mid;
    }
    else
    {
      lo = mid;
    }
    double width = static_cast<double>(hi - lo);
    double mag = std::max(std::abs(static_cast<double>(hi)), 1.0);
    if (width < mag * 1e-17) break;
  }
  return static_cast<double>((lo + hi) / 2);
}

/* -------------------------------------------------------------------------- */
/* Values                                                                     */
/* -------------------------------------------------------------------------- */

namespace {

[[noreturn]] void unsupported(const std::string& what, const SExpr& form)
{
  throw UnsupportedInterpretation(what, print(form));
}

/* Polynomial in the single variable of a root-obj, constant term first. */
Poly polynomial(const SExpr& form, const std::string& var);

Poly poly_add(Poly a, const Poly& b)
{
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b)
{
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

BigRational exact_number(const SExpr& form)
{
  if (form.is_int()) return BigRational(form.int_value());
  if (form.is_decimal()) return form.as_decimal().value();
  if (form.is_rational())
  {
    return BigRational(form.as_rational().numerator, form.as_rational().denominator);
  }
  if (form.head_is("-") && form.size() == 2) return -exact_number(form[1]);
  if (form.head_is("/") && form.size() == 3)
  {
    BigRational d = exact_number(form[2]);
    if (d == 0) unsupported("division by zero", form);
    return exact_number(form[1]) / d;
  }
  unsupported("numeral", form);
}

Poly polynomial(const SExpr& form, const std::string& var)
{
  if (form.is_symbol() && form.symbol_name() == var) return {0, 1};
  if (form.is_int() || form.is_decimal() || form.is_rational())
  {
    Poly p{exact_number(form)};
    trim(p);
    return p;
  }
  if (!form.is_list() || form.size() < 2 || !form[0].is_symbol()) unsupported("polynomial", form);
  const std::string& op = form[0].symbol_name();
  const auto& items = form.items();
  if (op == "+")
  {
    Poly acc;
    for (std::size_t i = 1; i < items.size(); ++i) acc = poly_add(acc, polynomial(items[i], var));
    return acc;
  }
  if (op == "*")
  {
    Poly acc{1};
    for (std::size_t i = 1; i < items.size(); ++i) acc = poly_mul(acc, polynomial(items[i], var));
    return acc;
  }
  if (op == "-")
  {
    Poly first = polynomial(items[1], var);
    if (items.size() == 2)
    {
      for (BigRational& c : first) c = -c;
      return first;
    }
    for (std::size_t i = 2; i < items.size(); ++i)
    {
      Poly neg = polynomial(items[i], var);
      for (BigRational& c : neg) c = -c;
      first = poly_add(first, neg);
    }
    return first;
  }
  if (op == "^" && items.size() == 3 && items[2].is_int())
  {
    Poly base = polynomial(items[1], var);
    Poly acc{1};
    for (BigInt k = 0; k < items[2].int_value(); ++k) acc = poly_mul(acc, base);
    return acc;
  }
  if (op == "/" && items.size() == 3)
  {
    BigRational d = exact_number(items[2]);
    Poly p = polynomial(items[1], var);
    for (BigRational& c : p) c /= d;
    return p;
  }
  unsupported("polynomial", form);
}

HostValue decode_real(const SExpr& form)
{
  if (form.head_is("root-obj") && form.size() == 3 && form[2].is_int())
  {
    // The polynomial's variable is whatever symbol occurs in it; Z3 uses x.
    std::string var = "x";
    std::vector<const SExpr*> todo{&form[1]};
    while (!todo.empty())
    {
      const SExpr* f = todo.back();
      todo.pop_back();
      if (f->is_symbol() && !f->is_symbol("+") && !f->is_symbol("*") && !f->is_symbol("-")
          && !f->is_symbol("^") && !f->is_symbol("/"))
      {
        var = f->symbol_name();
        break;
      }
      if (f->is_list())
      {
        for (const SExpr& c : f->items()) todo.push_back(&c);
      }
    }
    Poly p = polynomial(form[1], var);
    auto index = form[2].int_value().convert_to<std::size_t>();
    try
    {
      return HostValue::approximate(real_root(p, index));
    }
    catch (const Error&)
    {
      unsupported("algebraic number", form);
    }
  }
  if (form.head_is("-") && form.size() == 2 && form[1].head_is("root-obj"))
  {
    HostValue v = decode_real(form[1]);
    return HostValue::approximate(-v.as<Approximate>().value);
  }
  return HostValue::rational(exact_number(form));
}

void flatten_sequence(const SExpr& form,
                      const Sort& element,
                      const SortRegistry& registry,
                      std::vector<HostValue>& out)
{
  if (form.head_is("seq.unit") && form.size() == 2)
  {
    out.push_back(decode_value(form[1], element, registry));
    return;
  }
  if (form.head_is("seq.++"))
  {
    for (std::size_t i = 1; i < form.size(); ++i) flatten_sequence(form[i], element, registry, out);
    return;
  }
  if (form.is_symbol("seq.empty")) return;
  if (form.head_is("as") && form.size() == 3 && form[1].is_symbol("seq.empty")) return;
  unsupported("sequence", form);
}

}  // namespace

HostValue
decode_value(const SExpr& form, const Sort& sort, const SortRegistry& registry)
{
  if (sort.is_bool())
  {
    if (form.is_symbol("true")) return HostValue::boolean(true);
    if (form.is_symbol("false")) return HostValue::boolean(false);
    unsupported("Bool value", form);
  }
  if (sort.is_int())
  {
    BigRational r = exact_number(form);
    if (denominator(r) != 1) unsupported("Int value", form);
    return HostValue::integer(numerator(r));
  }
  if (sort.is_real()) return decode_real(form);
  if (sort.is_string())
  {
    if (form.is_string()) return HostValue::text(decode_string_literal(form.string_value()));
    unsupported("String value", form);
  }
  if (sort.is_bitvec())
  {
    std::size_t w = sort.bv_width();
    if (form.is_bitvec() && form.as_bitvec().width == w)
    {
      return {Bitvector{w, form.as_bitvec().value}};
    }
    // (_ bvN w)
    if (form.head_is("_") && form.size() == 3 && form[1].is_symbol()
        && form[1].symbol_name().rfind("bv", 0) == 0 && form[2].is_int()
        && form[2].int_value() == w)
    {
      std::string digits = form[1].symbol_name().substr(2);
      if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit))
      {
        BigInt v(digits);
        if (v < (BigInt(1) << w)) return {Bitvector{w, v}};
      }
    }
    unsupported("bit-vector value", form);
  }
  if (sort.is_seq())
  {
    Sequence s;
    flatten_sequence(form, sort.args()[0], registry, s.elements);
    return {std::move(s)};
  }
  if (sort.is_enum())
  {
    if (form.is_symbol())
    {
      auto fn = registry.find_function(form.symbol_name());
      if (fn && fn->role == DatatypeFunction::Role::enum_member && fn->sort == sort)
      {
        return {EnumMember{sort.name(), sort.node().labels[fn->index]}};
      }
    }
    unsupported("enumeration value", form);
  }
  if (sort.is_tuple())
  {
    const SortNode& n = sort.node();
    bool bare = form.is_symbol(n.tuple_constructor) && n.fields.empty();
    bool app = form.head_is(n.tuple_constructor) && form.size() == n.fields.size() + 1;
    if (!bare && !app) unsupported("tuple value", form);
    TupleValue t{sort.name(), {}};
    for (std::size_t i = 0; i < n.fields.size(); ++i)
    {
      t.fields.emplace_back(n.fields[i].name, decode_value(form[i + 1], n.fields[i].sort, registry));
    }
    return {std::move(t)};
  }
  unsupported("value of sort " + sort.to_string(), form);
}

/* -------------------------------------------------------------------------- */
/* Function interpretations                                                   */
/* -------------------------------------------------------------------------- */

namespace {

class InterpDecoder
{
 public:
  InterpDecoder(const std::vector<std::pair<std::string, Sort>>& params,
                const Sort& result,
                const SortRegistry& registry)
      : d_params(params), d_result(result), d_registry(registry)
  {
  }

  FunctionTable run(const SExpr& body)
  {
    walk(body, std::vector<std::optional<HostValue>>(d_params.size()));
    FunctionTable t;
    t.entries = std::move(d_entries);
    t.fallback = std::move(d_default);
    if (!t.fallback) unsupported("function body without default", body);
    return t;
  }

 private:
  using Partial = std::vector<std::optional<HostValue>>;

  std::optional<std::size_t> param_index(const SExpr& f) const
  {
    if (!f.is_symbol()) return std::nullopt;
    for (std::size_t i = 0; i < d_params.size(); ++i)
    {
      if (d_params[i].first == f.symbol_name()) return i;
    }
    return std::nullopt;
  }

  /* Adds the facts of a condition literal to `p`; false if the literal is
   * not of a supported shape. Contradictory facts make the arm dead. */
  bool assume(const SExpr& lit, Partial& p, bool& dead) const
  {
    if (lit.head_is("and"))
    {
      for (std::size_t i = 1; i < lit.size(); ++i)
      {
        if (!assume(lit[i], p, dead)) return false;
      }
      return true;
    }
    std::optional<std::size_t> idx;
    std::optional<HostValue> value;
    if (auto i = param_index(lit); i && d_params[*i].second.is_bool())
    {
      idx = i;
      value = HostValue::boolean(true);
    }
    else if (lit.head_is("not") && lit.size() == 2 && param_index(lit[1])
             && d_params[*param_index(lit[1])].second.is_bool())
    {
      idx = param_index(lit[1]);
      value = HostValue::boolean(false);
    }
    else if (lit.head_is("=") && lit.size() == 3)
    {
      std::size_t side = param_index(lit[1]) ? 1 : param_index(lit[2]) ? 2 : 0;
      if (side == 0) return false;
      idx = param_index(lit[side]);
      value = decode_value(lit[3 - side], d_params[*idx].second, d_registry);
    }
    else
    {
      return false;
    }
    if (p[*idx] && !(*p[*idx] == *value)) dead = true;
    p[*idx] = std::move(value);
    return true;
  }

  void walk(const SExpr& body, Partial p)
  {
    if (body.head_is("ite") && body.size() == 4)
    {
      Partial then_p = p;
      bool dead = false;
      if (!assume(body[1], then_p, dead)) unsupported("function condition", body[1]);
      if (!dead) walk(body[2], std::move(then_p));
      // A single Boolean literal also fixes the parameter on the else path.
      Partial else_p = p;
      bool else_dead = false;
      const SExpr& c = body[1];
      bool simple_bool = (param_index(c) && d_params[*param_index(c)].second.is_bool())
                         || (c.head_is("not") && c.size() == 2 && param_index(c[1]));
      if (simple_bool)
      {
        SExpr negated = c.head_is("not") ? c[1] : SExpr::list({sym("not"), c});
        assume(negated, else_p, else_dead);
      }
      if (!else_dead) walk(body[3], std::move(else_p));
      return;
    }
    if (auto i = param_index(body))
    {
      // The body returns one of the arguments.
      if (p[*i])
      {
        HostValue v = *p[*i];
        leaf(body, std::move(p), std::move(v));
        return;
      }
      if (!d_params[*i].second.is_bool()) unsupported("function body", body);
      for (bool b : {true, false})
      {
        Partial q = p;
        q[*i] = HostValue::boolean(b);
        leaf(body, std::move(q), HostValue::boolean(b));
      }
      return;
    }
    leaf(body, std::move(p), decode_value(body, d_result, d_registry));
  }

  void leaf(const SExpr& body, const Partial& p, HostValue value)
  {
    bool none = std::none_of(p.begin(), p.end(), [](const auto& v) { return v.has_value(); });
    bool all = std::all_of(p.begin(), p.end(), [](const auto& v) { return v.has_value(); });
    auto shared = std::make_shared<const HostValue>(std::move(value));
    if (none)
    {
      if (!d_default) d_default = shared;
      return;
    }
    if (!all) expand(p, 0, shared, body);
    else add(p, shared);
    // The rightmost leaf of a fully covering Boolean tree doubles as default.
    if (!d_default && &body == d_last_leaf) d_default = shared;
  }

  /* Fills unconstrained Boolean parameters with both values. */
  void expand(Partial p,
              std::size_t from,
              const std::shared_ptr<const HostValue>& value,
              const SExpr& body)
  {
    for (std::size_t i = from; i < p.size(); ++i)
    {
      if (p[i]) continue;
      if (!d_params[i].second.is_bool()) unsupported("partial function arm", body);
      for (bool b : {true, false})
      {
        Partial q = p;
        q[i] = HostValue::boolean(b);
        expand(std::move(q), i + 1, value, body);
      }
      return;
    }
    add(p, value);
  }

  void add(const Partial& p, const std::shared_ptr<const HostValue>& value)
  {
    FunctionTable::Entry e;
    for (const auto& v : p) e.args.push_back(*v);
    for (const FunctionTable::Entry& prior : d_entries)
    {
      if (prior.args == e.args) return;  // shadowed by an earlier arm
    }
    e.value = value;
    d_entries.push_back(std::move(e));
  }

 public:
  void set_last_leaf(const SExpr* leaf) { d_last_leaf = leaf; }

 private:
  const std::vector<std::pair<std::string, Sort>>& d_params;
  const Sort& d_result;
  const SortRegistry& d_registry;
  std::vector<FunctionTable::Entry> d_entries;
  std::shared_ptr<const HostValue> d_default;
  const SExpr* d_last_leaf = nullptr;
};

}  // namespace

FunctionTable
decode_fn_interp(const std::vector<std::pair<std::string, Sort>>& params,
                 const Sort& result,
                 const SExpr& body,
                 const SortRegistry& registry)
{
  const SExpr* leaf = &body;
  while (leaf->head_is("ite") && leaf->size() == 4) leaf = &(*leaf)[3];
  InterpDecoder decoder(params, result, registry);
  decoder.set_last_leaf(leaf);
  return decoder.run(body);
}

/* -------------------------------------------------------------------------- */
/* Models                                                                     */
/* -------------------------------------------------------------------------- */

namespace {

ModelEntry decode_define_fun(const SExpr& def, const SortRegistry& registry, const EnvStack& env)
{
  const std::string& name = def[1].symbol_name();
  const SExpr& params = def[2];
  const SExpr& body = def[4];
  const Declaration* decl = env.find(name);

  std::vector<std::pair<std::string, Sort>> typed;
  for (const SExpr& p : params.items())
  {
    if (!p.is_list() || p.size() != 2 || !p[0].is_symbol()) unsupported(name, def);
    typed.emplace_back(p[0].symbol_name(), registry.resolve_sort(p[1]));
  }

  Signature sig = decl != nullptr ? decl->signature : Signature(registry.resolve_sort(def[3]));
  if (decl == nullptr && !typed.empty())
  {
    FuncRank rank{{}, registry.resolve_sort(def[3])};
    for (const auto& [_, s] : typed) rank.params.push_back(s);
    sig = rank;
  }

  ModelEntry entry{name, sig, HostValue::boolean(false), decl == nullptr};
  if (const auto* s = std::get_if<Sort>(&sig))
  {
    if (!typed.empty()) unsupported(name, def);
    entry.value = decode_value(body, *s, registry);
  }
  else
  {
    const auto& rank = std::get<FuncRank>(sig);
    if (rank.params.size() != typed.size()) unsupported(name, def);
    for (std::size_t i = 0; i < typed.size(); ++i) typed[i].second = rank.params[i];
    entry.value = {decode_fn_interp(typed, rank.result, body, registry)};
  }
  return entry;
}

}  // namespace

Model
decode_model(const SExpr& raw, const SortRegistry& registry, const EnvStack& env)
{
  if (!raw.is_list()) unsupported("model", raw);
  Model model;
  const auto& items = raw.items();
  std::size_t start = !items.empty() && items[0].is_symbol("model") ? 1 : 0;
  for (std::size_t i = start; i < items.size(); ++i)
  {
    const SExpr& def = items[i];
    if (!def.head_is("define-fun") || def.size() != 5 || !def[1].is_symbol() || !def[2].is_list())
    {
      unsupported("model entry", def);
    }
    const std::string& name = def[1].symbol_name();
    if (env.find(name) != nullptr)
    {
      model.entries.push_back(decode_define_fun(def, registry, env));
      continue;
    }
    try
    {
      model.entries.push_back(decode_define_fun(def, registry, env));
    }
    catch (const Error&)
    {
      // Undecodable solver-internal definition.
    }
  }
  return model;
}

std::vector<std::pair<std::string, HostValue>>
model_as_assignment(const Model& model, const EnvStack& env)
{
  std::vector<std::pair<std::string, HostValue>> out;
  for (const Declaration& d : env.declarations())
  {
    if (const ModelEntry* e = model.find(d.name); e != nullptr && !e->auxiliary)
    {
      out.emplace_back(d.name, e->value);
    }
  }
  return out;
}

SExpr
assignment_form(const std::vector<std::pair<std::string, HostValue>>& bindings)
{
  std::vector<SExpr> items;
  for (const auto& [name, value] : bindings)
  {
    items.push_back(SExpr::list({SExpr::symbol(name, !is_simple_symbol(name)), to_sexpr(value)}));
  }
  return SExpr::list(std::move(items));
}

}  // namespace smtkit
