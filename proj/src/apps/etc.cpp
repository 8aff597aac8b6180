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

#include "smtkit/apps/etc.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "smtkit/errors.hpp"

namespace smtkit {

namespace {

constexpr std::size_t k_max_body = 255;
constexpr unsigned k_max_kind = 255;

std::size_t read_size(const SExpr& clause)
{
  if (clause.size() != 2 || !clause[1].is_int() || clause[1].int_value() < 0
      || clause[1].int_value() > 1'000'000'000)
  {
    throw CatalogError("expected a nonnegative integer in " + print(clause));
  }
  return clause[1].int_value().convert_to<std::size_t>();
}

bool read_bool(const SExpr& clause)
{
  if (clause.size() == 2 && clause[1].is_symbol("true")) return true;
  if (clause.size() == 2 && clause[1].is_symbol("false")) return false;
  throw CatalogError("expected true or false in " + print(clause));
}

std::string inc_var(unsigned kind) { return "inc_" + std::to_string(kind); }
std::string len_var(unsigned kind) { return "len_" + std::to_string(kind); }

SExpr size_lit(std::size_t v) { return SExpr::integer(static_cast<unsigned long>(v)); }

}  // namespace

ElementCatalog
ElementCatalog::parse(std::string_view text)
{
  SExpr form;
  try
  {
    form = parse_one(text);
  }
  catch (const SyntaxError& e)
  {
    throw CatalogError(e.what());
  }
  if (!form.head_is("catalog")) throw CatalogError("catalog must start with (catalog ...)");

  ElementCatalog c;
  bool have_header = false;
  for (std::size_t i = 1; i < form.size(); ++i)
  {
    const SExpr& clause = form[i];
    if (clause.head_is("header-size"))
    {
      c.header_size = read_size(clause);
      have_header = true;
    }
    else if (clause.head_is("overhead"))
    {
      c.overhead = read_size(clause);
    }
    else if (clause.head_is("element"))
    {
      CatalogElement e;
      bool have_id = false;
      bool have_min = false;
      bool have_max = false;
      for (std::size_t k = 1; k < clause.size(); ++k)
      {
        const SExpr& f = clause[k];
        if (f.head_is("id"))
        {
          std::size_t id = read_size(f);
          if (id > k_max_kind) throw CatalogError("element id above 255: " + print(f));
          e.kind = static_cast<unsigned>(id);
          have_id = true;
        }
        else if (f.head_is("min"))
        {
          e.body_min = read_size(f);
          have_min = true;
        }
        else if (f.head_is("max"))
        {
          e.body_max = read_size(f);
          have_max = true;
        }
        else if (f.head_is("optional"))
        {
          e.optional = read_bool(f);
        }
        else
        {
          throw CatalogError("unknown element field " + print(f));
        }
      }
      if (!have_id || !have_min || !have_max)
      {
        throw CatalogError("element needs id, min and max: " + print(clause));
      }
      c.elements.push_back(e);
    }
    else
    {
      throw CatalogError("unknown catalog clause " + print(clause));
    }
  }
  if (!have_header) throw CatalogError("catalog lacks (header-size n)");
  c.validate();
  return c;
}

ElementCatalog
ElementCatalog::load(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void
ElementCatalog::validate() const
{
  if (overhead < 2) throw CatalogError("overhead must cover the kind and length bytes (>= 2)");
  std::set<unsigned> kinds;
  for (const CatalogElement& e : elements)
  {
    if (e.kind > k_max_kind) throw CatalogError("element id above 255");
    if (!kinds.insert(e.kind).second)
    {
      throw CatalogError("duplicate element id " + std::to_string(e.kind));
    }
    if (e.body_min > e.body_max)
    {
      throw CatalogError("element " + std::to_string(e.kind) + " has min above max");
    }
    if (e.body_max > k_max_body)
    {
      throw CatalogError("element " + std::to_string(e.kind) + " body exceeds 255 bytes");
    }
  }
}

const CatalogElement*
ElementCatalog::find(unsigned kind) const
{
  for (const CatalogElement& e : elements)
  {
    if (e.kind == kind) return &e;
  }
  return nullptr;
}

std::size_t
FrameLayout::total_size(const ElementCatalog& catalog) const
{
  std::size_t total = catalog.header_size;
  for (const Item& it : items) total += catalog.overhead + it.length;
  return total;
}

/* -------------------------------------------------------------------------- */

LayoutSearch::LayoutSearch(Session& session, const ElementCatalog& catalog, std::size_t target)
    : d_session(session), d_catalog(catalog)
{
  catalog.validate();
  d_session.push();
  try
  {
    std::vector<SExpr> specs;
    for (const CatalogElement& e : catalog.elements)
    {
      specs.insert(specs.end(), {sym(inc_var(e.kind)), sym(":bool"), sym(len_var(e.kind)), sym(":int")});
    }
    d_session.declare(SExpr::list(std::move(specs)));

    std::vector<SExpr> facts{sym("and")};
    std::vector<SExpr> sum{sym("+"), size_lit(catalog.header_size)};
    for (const CatalogElement& e : catalog.elements)
    {
      SExpr inc = sym(inc_var(e.kind));
      SExpr len = sym(len_var(e.kind));
      if (!e.optional) facts.push_back(inc);
      facts.push_back(SExpr::list(
          {sym("=>"), inc,
           SExpr::list({sym("and"), SExpr::list({sym("<="), size_lit(e.body_min), len}),
                        SExpr::list({sym("<="), len, size_lit(e.body_max)})})}));
      facts.push_back(SExpr::list({sym("=>"), SExpr::list({sym("not"), inc}),
                                   SExpr::list({sym("="), len, size_lit(0)})}));
      sum.push_back(SExpr::list(
          {sym("ite"), inc, SExpr::list({sym("+"), size_lit(catalog.overhead), len}), size_lit(0)}));
    }
    facts.push_back(SExpr::list({sym("="), size_lit(target), SExpr::list(std::move(sum))}));
    d_session.assert_term_dynamic(SExpr::list(std::move(facts)));
  }
  catch (...)
  {
    if (d_session.is_open()) d_session.pop();
    throw;
  }
}

LayoutSearch::~LayoutSearch()
{
  try
  {
    if (d_session.is_open()) d_session.pop();
  }
  catch (const std::exception&)
  {
  }
}

std::optional<FrameLayout>
LayoutSearch::next()
{
  if (d_done) return std::nullopt;
  d_status = d_session.check_sat();
  if (!d_status.is_sat())
  {
    d_done = true;
    return std::nullopt;
  }

  std::vector<SExpr> vars;
  for (const CatalogElement& e : d_catalog.elements)
  {
    vars.push_back(sym(inc_var(e.kind)));
    vars.push_back(sym(len_var(e.kind)));
  }
  auto values = d_session.get_value(vars);

  FrameLayout layout;
  std::vector<SExpr> same{sym("and")};
  const SortRegistry& reg = d_session.registry();
  for (std::size_t i = 0; i < d_catalog.elements.size(); ++i)
  {
    const CatalogElement& e = d_catalog.elements[i];
    bool inc = decode_value(values[2 * i].second, Sort::boolean(), reg).as<bool>();
    BigInt len = decode_value(values[2 * i + 1].second, Sort::integer(), reg).as<BigInt>();
    if (inc) layout.items.push_back({e.kind, len.convert_to<std::size_t>()});
    same.push_back(SExpr::list({sym("="), vars[2 * i], sym(inc ? "true" : "false")}));
    same.push_back(SExpr::list({sym("="), vars[2 * i + 1], SExpr::integer(len)}));
  }
  d_session.assert_term_dynamic(SExpr::list({sym("not"), SExpr::list(std::move(same))}));
  return layout;
}

LayoutOutcome
solve_layout(Session& session, const ElementCatalog& catalog, std::size_t target)
{
  LayoutSearch search(session, catalog, target);
  LayoutOutcome out;
  out.layout = search.next();
  out.result = search.status();
  return out;
}

Frame
fill_layout(const ElementCatalog& catalog, const FrameLayout& layout, std::uint64_t seed)
{
  // Items must follow catalog order, include every required element and
  // respect the body bounds.
  std::size_t next = 0;
  for (const FrameLayout::Item& it : layout.items)
  {
    while (next < catalog.elements.size() && catalog.elements[next].kind != it.kind)
    {
      if (!catalog.elements[next].optional)
      {
        throw LayoutInvariantViolation("required element "
                                       + std::to_string(catalog.elements[next].kind)
                                       + " missing from layout");
      }
      ++next;
    }
    if (next == catalog.elements.size())
    {
      throw LayoutInvariantViolation("element " + std::to_string(it.kind)
                                     + " unknown or out of catalog order");
    }
    const CatalogElement& e = catalog.elements[next++];
    if (it.length < e.body_min || it.length > e.body_max)
    {
      throw LayoutInvariantViolation("element " + std::to_string(it.kind) + " body length "
                                     + std::to_string(it.length) + " outside "
                                     + std::to_string(e.body_min) + ".."
                                     + std::to_string(e.body_max));
    }
  }
  for (; next < catalog.elements.size(); ++next)
  {
    if (!catalog.elements[next].optional)
    {
      throw LayoutInvariantViolation("required element "
                                     + std::to_string(catalog.elements[next].kind)
                                     + " missing from layout");
    }
  }

  Frame frame;
  frame.reserve(layout.total_size(catalog));
  for (std::size_t i = 0; i < catalog.header_size; ++i)
  {
    frame.push_back(static_cast<std::uint8_t>(0xA0 + (i & 0x0F)));
  }
  for (std::size_t pos = 0; pos < layout.items.size(); ++pos)
  {
    const FrameLayout::Item& it = layout.items[pos];
    frame.push_back(static_cast<std::uint8_t>(it.kind));
    frame.push_back(static_cast<std::uint8_t>(it.length));
    frame.insert(frame.end(), catalog.overhead - 2, 0);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(it.kind), static_cast<std::uint32_t>(pos)};
    std::mt19937 gen(seq);
    for (std::size_t b = 0; b < it.length; ++b) frame.push_back(static_cast<std::uint8_t>(gen() & 0xFF));
  }
  if (frame.size() != layout.total_size(catalog))
  {
    throw LayoutInvariantViolation("frame length disagrees with layout size");
  }
  return frame;
}

GenerateOutcome
generate(Session& session,
         const ElementCatalog& catalog,
         std::size_t target,
         std::size_t count,
         std::uint64_t seed)
{
  GenerateOutcome out;
  LayoutSearch search(session, catalog, target);
  std::vector<FrameLayout> layouts;
  if (auto first = search.next()) layouts.push_back(std::move(*first));
  out.result = search.status();
  if (layouts.empty() || count == 0) return out;

  while (layouts.size() < count)
  {
    auto more = search.next();
    if (!more) break;
    layouts.push_back(std::move(*more));
  }
  if (search.status().is_unknown()) out.result = search.status();

  for (std::size_t i = 0; i < count; ++i)
  {
    const FrameLayout& layout = layouts[i % layouts.size()];
    out.frames.push_back(fill_layout(catalog, layout, seed + i / layouts.size()));
  }
  return out;
}

std::string
to_hex(const Frame& frame)
{
  static const char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(frame.size() * 2);
  for (std::uint8_t b : frame)
  {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0x0F]);
  }
  return s;
}

}  // namespace smtkit
