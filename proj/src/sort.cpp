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

#include "smtkit/sort.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace smtkit {

namespace {

std::string upper(std::string s)
{
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string lower(std::string s)
{
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

/* Label text of an enumeration member as the user wrote it. */
std::string member_label(const SExpr& m)
{
  if (m.is_int())
  {
    return m.int_value().str();
  }
  if (m.is_symbol())
  {
    const std::string& n = m.symbol_name();
    return n.size() > 1 && n[0] == ':' ? n.substr(1) : n;
  }
  if (m.is_string())
  {
    return m.string_value();
  }
  throw MalformedSpecifier("enumeration members must be integers, symbols or strings, got "
                           + print(m));
}

bool needs_mangling(const std::string& label)
{
  return !is_simple_symbol(label) || label[0] == ':' || label == "true" || label == "false";
}

}  // namespace

/* -------------------------------------------------------------------------- */
/* Sort                                                                       */
/* -------------------------------------------------------------------------- */

Sort
Sort::builtin(std::string name)
{
  auto node = std::make_shared<SortNode>();
  node->kind = Kind::builtin;
  node->name = std::move(name);
  return Sort(std::move(node));
}

Sort
Sort::indexed(std::string name, std::vector<SExpr> indices)
{
  auto node = std::make_shared<SortNode>();
  node->kind = Kind::indexed;
  node->name = std::move(name);
  node->indices = std::move(indices);
  return Sort(std::move(node));
}

Sort
Sort::parametric(std::string name, std::vector<Sort> args)
{
  auto node = std::make_shared<SortNode>();
  node->kind = Kind::parametric;
  node->name = std::move(name);
  node->args = std::move(args);
  return Sort(std::move(node));
}

Sort
Sort::bitvec(std::size_t width)
{
  return indexed("BitVec", {SExpr::integer(BigInt(width))});
}

Sort
Sort::seq(Sort element)
{
  return parametric("Seq", {std::move(element)});
}

Sort
Sort::array(Sort index, Sort element)
{
  return parametric("Array", {std::move(index), std::move(element)});
}

Sort::Kind
Sort::kind() const
{
  return d_node->kind;
}

const std::string&
Sort::name() const
{
  return d_node->name;
}

const std::vector<SExpr>&
Sort::indices() const
{
  return d_node->indices;
}

const std::vector<Sort>&
Sort::args() const
{
  return d_node->args;
}

bool
Sort::is_builtin(std::string_view n) const
{
  return d_node->kind == Kind::builtin && d_node->name == n;
}

bool
Sort::is_bitvec() const
{
  return d_node->kind == Kind::indexed && d_node->name == "BitVec";
}

bool
Sort::is_seq() const
{
  return d_node->kind == Kind::parametric && d_node->name == "Seq";
}

bool
Sort::is_array() const
{
  return d_node->kind == Kind::parametric && d_node->name == "Array";
}

std::size_t
Sort::bv_width() const
{
  return d_node->indices.at(0).int_value().convert_to<std::size_t>();
}

std::string
Sort::to_string() const
{
  return print(emit_sort(*this));
}

bool
operator==(const Sort& a, const Sort& b)
{
  if (a.d_node == b.d_node) return true;
  const SortNode& x = *a.d_node;
  const SortNode& y = *b.d_node;
  return x.kind == y.kind && x.name == y.name && x.indices == y.indices && x.args == y.args;
}

std::string
to_string(const Signature& sig)
{
  return print(emit_specifier(sig));
}

SExpr
emit_sort(const Sort& sort)
{
  switch (sort.kind())
  {
    case Sort::Kind::builtin:
    case Sort::Kind::enumeration:
    case Sort::Kind::tuple: return sym(sort.name());
    case Sort::Kind::indexed:
    {
      std::vector<SExpr> items{sym("_"), sym(sort.name())};
      items.insert(items.end(), sort.indices().begin(), sort.indices().end());
      return SExpr::list(std::move(items));
    }
    case Sort::Kind::parametric:
    {
      std::vector<SExpr> items{sym(sort.name())};
      for (const Sort& a : sort.args()) items.push_back(emit_sort(a));
      return SExpr::list(std::move(items));
    }
  }
  return sym(sort.name());
}

SExpr
emit_specifier(const Signature& sig)
{
  if (const auto* s = std::get_if<Sort>(&sig)) return emit_sort(*s);
  const auto& rank = std::get<FuncRank>(sig);
  std::vector<SExpr> params;
  for (const Sort& p : rank.params) params.push_back(emit_sort(p));
  return SExpr::list({sym(":fn"), SExpr::list(std::move(params)), emit_sort(rank.result)});
}

std::string
sort_key(std::string_view name)
{
  auto colon = name.find_last_of(':');
  if (colon != std::string_view::npos) name.remove_prefix(colon + 1);
  return lower(std::string(name));
}

/* -------------------------------------------------------------------------- */
/* SortRegistry                                                               */
/* -------------------------------------------------------------------------- */

SortRegistry::SortRegistry()
{
  for (const char* n : {"Bool", "Int", "Real", "String", "RegLan"})
  {
    d_builtins[sort_key(n)] = BuiltinInfo{n, 0, 0};
  }
  d_builtins["bitvec"] = BuiltinInfo{"BitVec", 0, 1};
  d_builtins["seq"] = BuiltinInfo{"Seq", 1, 0};
  d_builtins["array"] = BuiltinInfo{"Array", 2, 0};
}

Sort
SortRegistry::resolve_symbol(const std::string& raw) const
{
  std::string key = sort_key(raw);
  if (auto it = d_builtins.find(key); it != d_builtins.end())
  {
    const BuiltinInfo& info = it->second;
    if (info.params > 0) throw ArityMismatch(info.canonical, info.params, 0);
    if (info.indices > 0) throw ArityMismatch(info.canonical, info.indices, 0);
    return Sort::builtin(info.canonical);
  }
  if (auto it = d_user.find(key); it != d_user.end()) return it->second;
  throw UnknownSort(raw);
}

Sort
SortRegistry::resolve_list(const SExpr& spec) const
{
  const auto& items = spec.items();
  if (items.empty() || !items[0].is_symbol())
  {
    throw MalformedSpecifier("malformed sort specifier: " + print(spec));
  }

  // (_ BitVec 8) uses SMT-LIB indexed-identifier syntax; (:bitvec 8) is the
  // specifier spelling of the same sort.
  std::size_t first_arg = 1;
  std::string head = items[0].symbol_name();
  bool underscore = head == "_";
  if (underscore)
  {
    if (items.size() < 2 || !items[1].is_symbol())
    {
      throw MalformedSpecifier("malformed indexed sort: " + print(spec));
    }
    head = items[1].symbol_name();
    first_arg = 2;
  }
  std::size_t argc = items.size() - first_arg;

  std::string key = sort_key(head);
  auto it = d_builtins.find(key);
  if (it == d_builtins.end())
  {
    if (d_user.count(key) != 0)
    {
      throw ArityMismatch(d_user.at(key).name(), 0, argc);
    }
    throw UnknownSort(head);
  }
  const BuiltinInfo& info = it->second;

  if (info.indices > 0)
  {
    if (argc != info.indices) throw ArityMismatch(info.canonical, info.indices, argc);
    std::vector<SExpr> indices(items.begin() + first_arg, items.end());
    for (const SExpr& idx : indices)
    {
      if (!idx.is_int() || idx.int_value() <= 0)
      {
        throw MalformedSpecifier("bit-vector width must be a positive integer: "
                                 + print(spec));
      }
    }
    return Sort::indexed(info.canonical, std::move(indices));
  }
  if (underscore)
  {
    throw MalformedSpecifier(info.canonical + " is not an indexed sort");
  }
  if (argc != info.params) throw ArityMismatch(info.canonical, info.params, argc);
  std::vector<Sort> args;
  for (std::size_t i = first_arg; i < items.size(); ++i)
  {
    args.push_back(resolve_sort(items[i]));
  }
  return Sort::parametric(info.canonical, std::move(args));
}

Signature
SortRegistry::resolve(const SExpr& spec) const
{
  if (spec.is_symbol()) return resolve_symbol(spec.symbol_name());
  if (!spec.is_list() || spec.size() == 0)
  {
    throw MalformedSpecifier("malformed sort specifier: " + print(spec));
  }
  if (spec[0].is_symbol() && sort_key(spec[0].symbol_name()) == "fn")
  {
    if (spec.size() != 3 || !spec[1].is_list())
    {
      throw MalformedSpecifier("function rank must be (:fn (<params>) <result>): "
                               + print(spec));
    }
    FuncRank rank{{}, resolve_sort(spec[2])};
    for (const SExpr& p : spec[1].items()) rank.params.push_back(resolve_sort(p));
    return rank;
  }
  return resolve_list(spec);
}

Sort
SortRegistry::resolve_sort(const SExpr& spec) const
{
  Signature sig = resolve(spec);
  if (auto* s = std::get_if<Sort>(&sig)) return std::move(*s);
  throw MalformedSpecifier("expected a sort, got a function rank: " + print(spec));
}

std::string
SortRegistry::claim_name(std::string_view name) const
{
  std::string key = sort_key(name);
  std::string canonical = upper(key);
  if (key.empty() || !is_simple_symbol(canonical) || key.find('.') != std::string::npos)
  {
    throw MalformedSpecifier("invalid sort name: " + std::string(name));
  }
  if (d_builtins.count(key) != 0 || d_user.count(key) != 0)
  {
    throw DuplicateSortName(canonical);
  }
  return canonical;
}

SExpr
SortRegistry::register_enum_sort(std::string_view name, const std::vector<SExpr>& members)
{
  std::string canonical = claim_name(name);
  if (members.empty()) throw EmptyEnum(canonical);

  auto node = std::make_shared<SortNode>();
  node->kind = Sort::Kind::enumeration;
  node->name = canonical;

  std::set<std::string> seen;
  std::vector<SExpr> ctor_decls;
  for (const SExpr& m : members)
  {
    std::string label = member_label(m);
    if (!seen.insert(label).second)
    {
      throw DuplicateMember("enumeration sort " + canonical + " repeats member " + label);
    }
    bool mangle = needs_mangling(label);
    std::string ctor = mangle ? canonical + "." + label : label;
    if (d_functions.count(ctor) != 0)
    {
      throw DuplicateMember("constructor name " + ctor + " is already in use");
    }
    node->labels.push_back(label);
    node->constructors.push_back(ctor);
    ctor_decls.push_back(SExpr::list({SExpr::symbol(ctor, mangle)}));
  }

  Sort sort(node);
  for (std::size_t i = 0; i < node->constructors.size(); ++i)
  {
    d_functions.emplace(node->constructors[i],
                        DatatypeFunction{DatatypeFunction::Role::enum_member, sort, i});
  }
  d_user.emplace(sort_key(canonical), sort);
  d_user_order.push_back(canonical);

  SExpr cmd = SExpr::list({sym("declare-datatypes"),
                           SExpr::list({SExpr::list({sym(canonical), num(0)})}),
                           SExpr::list({SExpr::list(std::move(ctor_decls))})});
  d_pending.push_back(cmd);
  return cmd;
}

SExpr
SortRegistry::register_tuple_sort(std::string_view name,
                                  const std::vector<std::pair<std::string, SExpr>>& fields)
{
  std::string canonical = claim_name(name);

  auto node = std::make_shared<SortNode>();
  node->kind = Sort::Kind::tuple;
  node->name = canonical;
  node->tuple_constructor = canonical;
  if (d_functions.count(canonical) != 0)
  {
    throw DuplicateMember("constructor name " + canonical + " is already in use");
  }

  std::set<std::string> seen;
  std::vector<SExpr> ctor{sym(canonical)};
  for (const auto& [raw_field, spec] : fields)
  {
    std::string field =
        raw_field.size() > 1 && raw_field[0] == ':' ? raw_field.substr(1) : raw_field;
    if (field.empty() || field.find('|') != std::string::npos)
    {
      throw MalformedSpecifier("invalid field name: " + raw_field);
    }
    if (!seen.insert(field).second) throw DuplicateFieldName(canonical, field);
    Sort fsort = resolve_sort(spec);
    std::string accessor = canonical + "." + field;
    if (d_functions.count(accessor) != 0)
    {
      throw DuplicateMember("accessor name " + accessor + " is already in use");
    }
    ctor.push_back(SExpr::list({SExpr::symbol(accessor, !is_simple_symbol(accessor)),
                                emit_sort(fsort)}));
    node->fields.push_back(TupleField{field, accessor, fsort});
  }

  Sort sort(node);
  d_functions.emplace(canonical,
                      DatatypeFunction{DatatypeFunction::Role::tuple_constructor, sort, 0});
  for (std::size_t i = 0; i < node->fields.size(); ++i)
  {
    d_functions.emplace(node->fields[i].accessor,
                        DatatypeFunction{DatatypeFunction::Role::tuple_accessor, sort, i});
  }
  d_user.emplace(sort_key(canonical), sort);
  d_user_order.push_back(canonical);

  SExpr cmd = SExpr::list({sym("declare-datatypes"),
                           SExpr::list({SExpr::list({sym(canonical), num(0)})}),
                           SExpr::list({SExpr::list({SExpr::list(std::move(ctor))})})});
  d_pending.push_back(cmd);
  return cmd;
}

std::optional<Sort>
SortRegistry::find_user_sort(std::string_view name) const
{
  auto it = d_user.find(sort_key(name));
  if (it == d_user.end()) return std::nullopt;
  return it->second;
}

std::optional<DatatypeFunction>
SortRegistry::find_function(std::string_view solver_name) const
{
  auto it = d_functions.find(solver_name);
  if (it == d_functions.end())
  {
    // Sort names are canonically uppercase; accept `person.age` for PERSON.age.
    std::string alt(solver_name);
    std::size_t dot = std::min(alt.find('.'), alt.size());
    for (std::size_t i = 0; i < dot; ++i)
    {
      alt[i] = static_cast<char>(std::toupper(static_cast<unsigned char>(alt[i])));
    }
    it = d_functions.find(alt);
    if (it == d_functions.end()) return std::nullopt;
  }
  return it->second;
}

std::optional<std::string>
SortRegistry::enum_constructor(const Sort& sort, std::string_view label) const
{
  if (!sort.is_enum()) return std::nullopt;
  const SortNode& n = sort.node();
  for (std::size_t i = 0; i < n.labels.size(); ++i)
  {
    if (n.labels[i] == label) return n.constructors[i];
  }
  return std::nullopt;
}

std::vector<SExpr>
SortRegistry::take_pending()
{
  std::vector<SExpr> out;
  out.swap(d_pending);
  return out;
}

std::vector<std::string>
SortRegistry::user_sort_names() const
{
  return d_user_order;
}

}  // namespace smtkit
