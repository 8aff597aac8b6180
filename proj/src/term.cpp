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

#include "smtkit/term.hpp"

#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>

namespace smtkit {

namespace {

/* Raised for nullary terms whose sort comes only from context (seq.empty);
 * callers that can supply a sort catch it and retry. */
class NeedsSortContext : public TermError
{
 public:
  using TermError::TermError;
};

std::string fold_case(std::string_view s)
{
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

/* -------------------------------------------------------------------------- */
/* Operator table                                                             */
/* -------------------------------------------------------------------------- */

std::vector<OperatorEntry> make_table()
{
  using F = OpFamily;
  constexpr std::optional<std::size_t> variadic = std::nullopt;
  return {
      {"true", {}, 0, 0, 0, F::constant_bool, "Bool"},
      {"false", {}, 0, 0, 0, F::constant_bool, "Bool"},
      {"and", {}, 0, variadic, 0, F::bool_fold, "Bool* -> Bool; () = true"},
      {"or", {}, 0, variadic, 0, F::bool_fold, "Bool* -> Bool; () = false"},
      {"xor", {}, 2, variadic, 0, F::bool_xor, "Bool Bool+ -> Bool"},
      {"not", {}, 1, 1, 0, F::bool_not, "Bool -> Bool"},
      {"=>", {"implies"}, 2, variadic, 0, F::bool_implies, "Bool Bool+ -> Bool (right assoc)"},
      {"ite", {}, 3, 3, 0, F::ite, "Bool T T -> T"},
      {"=", {}, 2, variadic, 0, F::equality, "T T+ -> Bool"},
      {"distinct", {}, 2, variadic, 0, F::equality, "T T+ -> Bool"},

      {"+", {}, 0, variadic, 0, F::arith_fold, "N* -> N; () = 0"},
      {"*", {}, 0, variadic, 0, F::arith_fold, "N* -> N; () = 1"},
      {"-", {}, 1, variadic, 0, F::arith_minus, "N N* -> N (unary negation)"},
      {"/", {}, 2, variadic, 0, F::arith_real_div, "Real Real+ -> Real"},
      {"div", {}, 2, 2, 0, F::arith_int_binary, "Int Int -> Int"},
      {"mod", {}, 2, 2, 0, F::arith_int_binary, "Int Int -> Int"},
      {"rem", {}, 2, 2, 0, F::arith_int_binary, "Int Int -> Int"},
      {"abs", {}, 1, 1, 0, F::arith_abs, "N -> N"},
      {"<=", {}, 2, variadic, 0, F::arith_compare, "N N+ -> Bool (chainable)"},
      {"<", {}, 2, variadic, 0, F::arith_compare, "N N+ -> Bool (chainable)"},
      {">=", {}, 2, variadic, 0, F::arith_compare, "N N+ -> Bool (chainable)"},
      {">", {}, 2, variadic, 0, F::arith_compare, "N N+ -> Bool (chainable)"},
      {"to_real", {}, 1, 1, 0, F::to_real, "Int -> Real"},
      {"to_int", {}, 1, 1, 0, F::to_int, "Real -> Int"},
      {"is_int", {}, 1, 1, 0, F::is_int, "Real -> Bool"},

      {"bvadd", {}, 2, variadic, 0, F::bv_fold, "BV[w] BV[w]+ -> BV[w]"},
      {"bvmul", {}, 2, variadic, 0, F::bv_fold, "BV[w] BV[w]+ -> BV[w]"},
      {"bvand", {}, 2, variadic, 0, F::bv_fold, "BV[w] BV[w]+ -> BV[w]"},
      {"bvor", {}, 2, variadic, 0, F::bv_fold, "BV[w] BV[w]+ -> BV[w]"},
      {"bvxor", {}, 2, variadic, 0, F::bv_fold, "BV[w] BV[w]+ -> BV[w]"},
      {"bvsub", {}, 2, 2, 0, F::bv_binary, "BV[w] BV[w] -> BV[w]"},
      {"bvudiv", {}, 2, 2, 0, F::bv_binary, "BV[w] BV[w] -> BV[w]"},
      {"bvurem", {}, 2, 2, 0, F::bv_binary, "BV[w] BV[w] -> BV[w]"},
      {"bvshl", {}, 2, 2, 0, F::bv_binary, "BV[w] BV[w] -> BV[w]"},
      {"bvlshr", {}, 2, 2, 0, F::bv_binary, "BV[w] BV[w] -> BV[w]"},
      {"bvnot", {}, 1, 1, 0, F::bv_unary, "BV[w] -> BV[w]"},
      {"bvneg", {}, 1, 1, 0, F::bv_unary, "BV[w] -> BV[w]"},
      {"bvult", {}, 2, 2, 0, F::bv_compare, "BV[w] BV[w] -> Bool"},
      {"bvule", {}, 2, 2, 0, F::bv_compare, "BV[w] BV[w] -> Bool"},
      {"bvugt", {}, 2, 2, 0, F::bv_compare, "BV[w] BV[w] -> Bool"},
      {"bvuge", {}, 2, 2, 0, F::bv_compare, "BV[w] BV[w] -> Bool"},
      {"bvslt", {}, 2, 2, 0, F::bv_compare, "BV[w] BV[w] -> Bool"},
      {"bvsle", {}, 2, 2, 0, F::bv_compare, "BV[w] BV[w] -> Bool"},
      {"bvsgt", {}, 2, 2, 0, F::bv_compare, "BV[w] BV[w] -> Bool"},
      {"bvsge", {}, 2, 2, 0, F::bv_compare, "BV[w] BV[w] -> Bool"},
      {"concat", {}, 2, variadic, 0, F::bv_concat, "BV[a] BV[b]+ -> BV[a+b+...]"},
      {"extract", {}, 1, 1, 2, F::bv_extract, "(_ extract i j) BV[w] -> BV[i-j+1], w > i >= j"},
      {"zero_extend", {}, 1, 1, 1, F::bv_extend, "(_ zero_extend k) BV[w] -> BV[w+k]"},
      {"sign_extend", {}, 1, 1, 1, F::bv_extend, "(_ sign_extend k) BV[w] -> BV[w+k]"},

      {"seq.unit", {}, 1, 1, 0, F::seq_unit, "T -> (Seq T)"},
      {"seq.++", {"str.++"}, 2, variadic, 0, F::seq_concat, "S S+ -> S, S = String or (Seq T)"},
      {"seq.len", {"str.len"}, 1, 1, 0, F::seq_len, "S -> Int, S = String or (Seq T)"},
      {"seq.at", {"str.at"}, 2, 2, 0, F::seq_at, "S Int -> S, S = String or (Seq T)"},
      {"seq.empty", {}, 0, 0, 0, F::seq_empty, "S (sort from context or (as seq.empty S))"},
      {"str.contains", {"seq.contains"}, 2, 2, 0, F::seq_contains, "S S -> Bool, S = String or (Seq T)"},
      {"str.to_re", {}, 1, 1, 0, F::str_to_re, "String -> RegLan"},
      {"str.in_re", {}, 2, 2, 0, F::str_in_re, "String RegLan -> Bool"},
      {"re.*", {}, 1, 1, 0, F::re_star, "RegLan -> RegLan"},
      {"re.++", {}, 2, variadic, 0, F::re_fold, "RegLan RegLan+ -> RegLan"},
      {"re.union", {}, 2, variadic, 0, F::re_fold, "RegLan RegLan+ -> RegLan"},

      {"select", {}, 2, 2, 0, F::array_select, "(Array I E) I -> E"},
      {"store", {}, 3, 3, 0, F::array_store, "(Array I E) I E -> (Array I E)"},

      {"forall", {}, 2, 2, 0, F::quantifier, "((x S)+) Bool -> Bool"},
      {"exists", {}, 2, 2, 0, F::quantifier, "((x S)+) Bool -> Bool"},
  };
}

const std::map<std::string, const OperatorEntry*>& lookup_index()
{
  static const std::map<std::string, const OperatorEntry*> index = [] {
    std::map<std::string, const OperatorEntry*> m;
    for (const OperatorEntry& e : operator_table())
    {
      m.emplace(fold_case(e.name), &e);
      for (const std::string& a : e.aliases) m.emplace(fold_case(a), &e);
    }
    return m;
  }();
  return index;
}

const OperatorEntry* find_operator(std::string_view name)
{
  const auto& index = lookup_index();
  auto it = index.find(fold_case(name));
  return it == index.end() ? nullptr : it->second;
}

/* -------------------------------------------------------------------------- */
/* Term constructors                                                          */
/* -------------------------------------------------------------------------- */

TypedTerm make_literal(SExpr lowered, Sort sort, std::optional<SExpr> origin = std::nullopt)
{
  TypedTerm t;
  t.kind = TypedTerm::Kind::literal;
  t.literal = std::move(lowered);
  t.sort = std::move(sort);
  t.origin = std::move(origin);
  return t;
}

TypedTerm make_app(std::string head,
                   std::vector<TypedTerm> children,
                   Sort sort,
                   std::vector<SExpr> indices = {})
{
  TypedTerm t;
  t.kind = TypedTerm::Kind::application;
  t.head = std::move(head);
  t.children = std::move(children);
  t.sort = std::move(sort);
  t.indices = std::move(indices);
  return t;
}

TypedTerm make_variable(std::string name, Sort sort)
{
  TypedTerm t;
  t.kind = TypedTerm::Kind::variable;
  t.head = std::move(name);
  t.sort = std::move(sort);
  return t;
}

TypedTerm int_literal(const BigInt& v, std::optional<SExpr> origin)
{
  SExpr lowered = v < 0 ? SExpr::list({sym("-"), SExpr::integer(-v)}) : SExpr::integer(v);
  return make_literal(std::move(lowered), Sort::integer(), std::move(origin));
}

TypedTerm to_real(TypedTerm t)
{
  std::vector<TypedTerm> c;
  c.push_back(std::move(t));
  return make_app("to_real", std::move(c), Sort::real());
}

std::string describe(const Sort& s) { return s.to_string(); }

[[noreturn]] void mismatch(const std::string& op,
                           std::size_t pos,
                           const std::string& expected,
                           const Sort& got)
{
  throw SortMismatch(op, pos, expected, describe(got));
}

/* -------------------------------------------------------------------------- */
/* Builder                                                                    */
/* -------------------------------------------------------------------------- */

class Builder
{
 public:
  Builder(const EnvStack& env, const SortRegistry& registry, BoundScope& bound)
      : d_env(env), d_registry(registry), d_bound(bound)
  {
  }

  TypedTerm build(const SExpr& form, const Sort* expected)
  {
    if (form.is_symbol()) return build_symbol(form, expected);
    if (form.is_list()) return build_list(form, expected);
    return build_literal(form, expected);
  }

 private:
  /* ---------------------------------------------------------------------- */
  /* Atoms                                                                  */

  TypedTerm build_literal(const SExpr& form, const Sort* expected)
  {
    TypedTerm t;
    if (form.is_int())
    {
      t = int_literal(form.int_value(), form);
    }
    else if (form.is_rational())
    {
      const auto& r = form.as_rational();
      SExpr q = SExpr::list({sym("/"), SExpr::integer(abs(r.numerator)),
                             SExpr::integer(r.denominator)});
      if (r.numerator < 0) q = SExpr::list({sym("-"), q});
      t = make_literal(std::move(q), Sort::real(), form);
    }
    else if (form.is_decimal())
    {
      const std::string& text = form.as_decimal().text;
      SExpr d = text[0] == '-'
                    ? SExpr::list({sym("-"), SExpr::decimal(text.substr(1))})
                    : form;
      t = make_literal(std::move(d), Sort::real(), form);
    }
    else if (form.is_string())
    {
      t = make_literal(encode_string_literal(form.string_value()), Sort::string(), form);
    }
    else
    {
      const auto& bv = form.as_bitvec();
      t = make_literal(form, Sort::bitvec(bv.width), form);
    }
    if (expected != nullptr)
    {
      if (auto c = coerce_literal(t, *expected)) return std::move(*c);
    }
    return t;
  }

  TypedTerm build_symbol(const SExpr& form, const Sort* expected)
  {
    const std::string& name = form.symbol_name();
    if (const Sort* s = d_bound.find(name)) return make_variable(name, *s);

    if (const Declaration* d = d_env.find(name))
    {
      if (const auto* s = std::get_if<Sort>(&d->signature)) return make_variable(name, *s);
      const auto& rank = std::get<FuncRank>(d->signature);
      if (!rank.params.empty())
      {
        throw BadArity("function " + name + " expects "
                       + std::to_string(rank.params.size()) + " argument(s), got 0");
      }
      return make_app(name, {}, rank.result);
    }

    if (const OperatorEntry* op = find_operator(name))
    {
      switch (op->family)
      {
        case OpFamily::constant_bool:
          return make_literal(sym(op->name), Sort::boolean(), form);
        case OpFamily::seq_empty: return seq_empty(expected);
        default:
          throw BadArity("operator " + op->name + " cannot be used as a value");
      }
    }

    if (auto fn = d_registry.find_function(name))
    {
      const SortNode& n = fn->sort.node();
      if (fn->role == DatatypeFunction::Role::enum_member)
      {
        return enum_literal(fn->sort, fn->index, form);
      }
      if (fn->role == DatatypeFunction::Role::tuple_constructor && n.fields.empty())
      {
        return make_app(n.tuple_constructor, {}, fn->sort);
      }
      throw BadArity(name + " requires arguments");
    }

    // A bare label where an enumeration is expected, e.g. `red` for :rgb.
    if (expected != nullptr)
    {
      TypedTerm probe = make_literal(form, Sort::boolean(), form);
      if (auto c = coerce_literal(probe, *expected)) return std::move(*c);
    }
    throw UndeclaredName(name);
  }

  TypedTerm enum_literal(const Sort& sort, std::size_t index, std::optional<SExpr> origin)
  {
    const SortNode& n = sort.node();
    const std::string& ctor = n.constructors[index];
    bool quoted = ctor != n.labels[index];
    return make_literal(SExpr::symbol(ctor, quoted), sort, std::move(origin));
  }

  TypedTerm seq_empty(const Sort* expected)
  {
    if (expected == nullptr)
    {
      throw NeedsSortContext(
          "cannot infer the sort of seq.empty here; write (as seq.empty <sort>)");
    }
    if (expected->is_string()) return make_literal(SExpr::string(""), *expected);
    if (expected->is_seq())
    {
      return make_literal(SExpr::list({sym("as"), sym("seq.empty"), emit_sort(*expected)}),
                          *expected);
    }
    throw SortMismatch("seq.empty", 0, "String or (Seq T)", describe(*expected));
  }

  /* Reinterprets a literal at `target`: enumeration labels, Int->Real. */
  std::optional<TypedTerm> coerce_literal(const TypedTerm& t, const Sort& target)
  {
    if (t.sort == target) return t;
    if (t.kind != TypedTerm::Kind::literal || !t.origin) return std::nullopt;
    const SExpr& o = *t.origin;
    if (target.is_enum())
    {
      std::optional<std::string> label;
      if (o.is_int()) label = o.int_value().str();
      if (o.is_string()) label = o.string_value();
      if (o.is_symbol())
      {
        const std::string& n = o.symbol_name();
        label = n.size() > 1 && n[0] == ':' ? n.substr(1) : n;
      }
      if (!label) return std::nullopt;
      const SortNode& n = target.node();
      for (std::size_t i = 0; i < n.labels.size(); ++i)
      {
        if (n.labels[i] == *label) return enum_literal(target, i, o);
      }
      return std::nullopt;
    }
    if (target.is_real() && t.sort.is_int()) return to_real(t);
    return std::nullopt;
  }

  /* ---------------------------------------------------------------------- */
  /* Applications                                                           */

  TypedTerm build_list(const SExpr& form, const Sort* expected)
  {
    const auto& items = form.items();
    if (items.empty()) throw TermError("empty application ()");
    const SExpr& head = items[0];

    if (head.is_list())
    {
      if (head.head_is("_") && head.size() >= 2 && head[1].is_symbol())
      {
        const OperatorEntry* op = find_operator(head[1].symbol_name());
        if (op == nullptr || op->num_indices == 0)
        {
          throw UnknownOperator(print(head));
        }
        std::vector<SExpr> indices(head.items().begin() + 2, head.items().end());
        return apply_operator(*op, form, indices, expected);
      }
      throw UnknownOperator(print(head));
    }
    if (!head.is_symbol()) throw UnknownOperator(print(head));
    const std::string& name = head.symbol_name();

    if (name == "as")
    {
      if (items.size() == 3 && items[1].is_symbol() && fold_case(items[1].symbol_name()) == "seq.empty")
      {
        Sort s = d_registry.resolve_sort(items[2]);
        return seq_empty(&s);
      }
      throw TermError("(as ...) is only supported for seq.empty: " + print(form));
    }

    if (d_bound.find(name) != nullptr)
    {
      throw BadArity("bound variable " + name + " is not a function");
    }
    if (const Declaration* d = d_env.find(name))
    {
      const auto* rank = std::get_if<FuncRank>(&d->signature);
      if (rank == nullptr)
      {
        throw BadArity("constant " + name + " cannot be applied to arguments");
      }
      return apply_function(name, rank->params, rank->result, form);
    }
    if (const OperatorEntry* op = find_operator(name))
    {
      if (op->num_indices > 0)
      {
        throw BadArity("operator " + op->name + " must be written (_ " + op->name
                       + " <indices>)");
      }
      return apply_operator(*op, form, {}, expected);
    }
    if (auto fn = d_registry.find_function(name))
    {
      const SortNode& n = fn->sort.node();
      switch (fn->role)
      {
        case DatatypeFunction::Role::tuple_constructor:
        {
          std::vector<Sort> params;
          for (const TupleField& f : n.fields) params.push_back(f.sort);
          return apply_function(n.tuple_constructor, params, fn->sort, form);
        }
        case DatatypeFunction::Role::tuple_accessor:
          return apply_function(n.fields[fn->index].accessor, {fn->sort},
                                n.fields[fn->index].sort, form);
        case DatatypeFunction::Role::enum_member:
          throw BadArity("enumeration member " + name + " takes no arguments");
      }
    }
    throw UnknownOperator(name);
  }

  TypedTerm apply_function(const std::string& name,
                           const std::vector<Sort>& params,
                           const Sort& result,
                           const SExpr& form)
  {
    const auto& items = form.items();
    std::size_t argc = items.size() - 1;
    if (argc != params.size())
    {
      throw BadArity(name + " expects " + std::to_string(params.size())
                     + " argument(s), got " + std::to_string(argc));
    }
    std::vector<TypedTerm> args;
    for (std::size_t i = 0; i < argc; ++i)
    {
      TypedTerm a = build(items[i + 1], &params[i]);
      if (!(a.sort == params[i]))
      {
        auto c = coerce_literal(a, params[i]);
        if (!c) mismatch(name, i + 1, describe(params[i]), a.sort);
        a = std::move(*c);
      }
      args.push_back(std::move(a));
    }
    return make_app(name, std::move(args), result);
  }

  /* Builds args[from..]; args whose sort only context can supply are built
   * after the others, against the first known sort. */
  std::vector<TypedTerm> build_uniform_args(const std::vector<SExpr>& items,
                                            std::size_t from,
                                            const Sort* hint)
  {
    std::vector<std::optional<TypedTerm>> built(items.size() - from);
    std::optional<Sort> anchor;
    if (hint != nullptr) anchor = *hint;
    bool deferred = false;
    for (std::size_t i = from; i < items.size(); ++i)
    {
      try
      {
        built[i - from] = build(items[i], nullptr);
        if (!anchor) anchor = built[i - from]->sort;
      }
      catch (const NeedsSortContext&)
      {
        deferred = true;
      }
    }
    if (deferred)
    {
      if (!anchor)
      {
        throw NeedsSortContext("cannot infer the sort of seq.empty in " + print(items[0]));
      }
      for (std::size_t i = from; i < items.size(); ++i)
      {
        if (!built[i - from]) built[i - from] = build(items[i], &*anchor);
      }
    }
    std::vector<TypedTerm> out;
    for (auto& b : built) out.push_back(std::move(*b));
    return out;
  }

  /* Brings `args` to one sort: enumeration labels are read at the
   * enumeration sort present, Int is promoted to Real when mixed. */
  void unify(const std::string& op, std::vector<TypedTerm>& args, std::size_t first_pos)
  {
    const Sort* enum_sort = nullptr;
    bool any_real = false;
    bool all_numeric = true;
    for (const TypedTerm& a : args)
    {
      if (a.sort.is_enum() && enum_sort == nullptr) enum_sort = &a.sort;
      any_real = any_real || a.sort.is_real();
      all_numeric = all_numeric && a.sort.is_numeric();
    }
    if (enum_sort != nullptr)
    {
      Sort target = *enum_sort;
      for (TypedTerm& a : args)
      {
        if (auto c = coerce_literal(a, target)) a = std::move(*c);
      }
    }
    if (all_numeric && any_real) promote(args);
    for (std::size_t i = 1; i < args.size(); ++i)
    {
      if (!(args[i].sort == args[0].sort))
      {
        mismatch(op, first_pos + i, describe(args[0].sort), args[i].sort);
      }
    }
  }

  static void promote(std::vector<TypedTerm>& args)
  {
    for (TypedTerm& a : args)
    {
      if (a.sort.is_int()) a = to_real(std::move(a));
    }
  }

  std::vector<TypedTerm> build_args(const std::vector<SExpr>& items)
  {
    std::vector<TypedTerm> args;
    for (std::size_t i = 1; i < items.size(); ++i) args.push_back(build(items[i], nullptr));
    return args;
  }

  void require(const std::string& op, const TypedTerm& t, std::size_t pos, bool ok,
               const std::string& expected)
  {
    if (!ok) mismatch(op, pos, expected, t.sort);
  }

  Sort numeric_result(const std::string& op, std::vector<TypedTerm>& args)
  {
    bool any_real = false;
    for (std::size_t i = 0; i < args.size(); ++i)
    {
      require(op, args[i], i + 1, args[i].sort.is_numeric(), "Int or Real");
      any_real = any_real || args[i].sort.is_real();
    }
    if (any_real) promote(args);
    return any_real ? Sort::real() : Sort::integer();
  }

  std::size_t bv_uniform(const std::string& op, const std::vector<TypedTerm>& args)
  {
    for (std::size_t i = 0; i < args.size(); ++i)
    {
      require(op, args[i], i + 1, args[i].sort.is_bitvec(), "(_ BitVec w)");
      if (i > 0 && !(args[i].sort == args[0].sort))
      {
        mismatch(op, i + 1, describe(args[0].sort), args[i].sort);
      }
    }
    return args[0].sort.bv_width();
  }

  static bool is_sequence(const Sort& s) { return s.is_string() || s.is_seq(); }

  static std::string seq_name(const Sort& s, const char* str_name, const char* seq_name)
  {
    return s.is_string() ? str_name : seq_name;
  }

  TypedTerm build_quantifier(const OperatorEntry& op, const SExpr& form)
  {
    const SExpr& vars = form[1];
    if (!vars.is_list() || vars.size() == 0)
    {
      throw TermError(op.name + " requires a nonempty variable list: " + print(form));
    }
    std::vector<std::pair<std::string, Sort>> bound;
    for (const SExpr& v : vars.items())
    {
      if (!v.is_list() || v.size() != 2 || !v[0].is_symbol())
      {
        throw TermError("malformed bound variable " + print(v) + " in " + op.name);
      }
      bound.emplace_back(v[0].symbol_name(), d_registry.resolve_sort(v[1]));
    }
    d_bound.push(bound);
    TypedTerm body;
    try
    {
      Sort b = Sort::boolean();
      body = build(form[2], &b);
    }
    catch (...)
    {
      d_bound.pop();
      throw;
    }
    d_bound.pop();
    require(op.name, body, 2, body.sort.is_bool(), "Bool");

    TypedTerm t;
    t.kind = TypedTerm::Kind::binder;
    t.head = op.name;
    t.bound = std::move(bound);
    t.children.push_back(std::move(body));
    t.sort = Sort::boolean();
    return t;
  }

  TypedTerm apply_operator(const OperatorEntry& op,
                           const SExpr& form,
                           const std::vector<SExpr>& indices,
                           const Sort* expected)
  {
    const auto& items = form.items();
    std::size_t argc = items.size() - 1;
    if (argc < op.min_args || (op.max_args && argc > *op.max_args))
    {
      throw BadArity("operator " + op.name + " given " + std::to_string(argc)
                     + " argument(s)");
    }
    if (indices.size() != op.num_indices)
    {
      throw BadArity("operator " + op.name + " expects " + std::to_string(op.num_indices)
                     + " index(es)");
    }
    for (const SExpr& idx : indices)
    {
      if (!idx.is_int() || idx.int_value() < 0)
      {
        throw TermError("indices of " + op.name + " must be numerals: " + print(form));
      }
    }

    const std::string& name = op.name;
    using F = OpFamily;
    switch (op.family)
    {
      case F::constant_bool: return make_literal(sym(name), Sort::boolean());

      case F::bool_fold:
      case F::bool_xor:
      case F::bool_implies:
      case F::bool_not:
      {
        auto args = build_args(items);
        for (std::size_t i = 0; i < args.size(); ++i)
        {
          require(name, args[i], i + 1, args[i].sort.is_bool(), "Bool");
        }
        if (op.family == F::bool_fold && args.empty())
        {
          return make_literal(sym(name == "and" ? "true" : "false"), Sort::boolean());
        }
        if (op.family == F::bool_fold && args.size() == 1) return std::move(args[0]);
        return make_app(name, std::move(args), Sort::boolean());
      }

      case F::ite:
      {
        Sort b = Sort::boolean();
        TypedTerm cond = build(items[1], &b);
        require(name, cond, 1, cond.sort.is_bool(), "Bool");
        std::vector<SExpr> branch_items{items[0], items[2], items[3]};
        auto branches = build_uniform_args(branch_items, 1, expected);
        unify(name, branches, 2);
        Sort result = branches[0].sort;
        std::vector<TypedTerm> args;
        args.push_back(std::move(cond));
        for (auto& br : branches) args.push_back(std::move(br));
        return make_app(name, std::move(args), result);
      }

      case F::equality:
      {
        auto args = build_uniform_args(items, 1, nullptr);
        unify(name, args, 1);
        return make_app(name, std::move(args), Sort::boolean());
      }

      case F::arith_fold:
      {
        auto args = build_args(items);
        if (args.empty()) return int_literal(name == "+" ? 0 : 1, std::nullopt);
        Sort result = numeric_result(name, args);
        if (args.size() == 1) return std::move(args[0]);
        return make_app(name, std::move(args), result);
      }

      case F::arith_minus:
      case F::arith_abs:
      {
        auto args = build_args(items);
        Sort result = numeric_result(name, args);
        return make_app(name, std::move(args), result);
      }

      case F::arith_real_div:
      {
        auto args = build_args(items);
        numeric_result(name, args);
        promote(args);
        return make_app(name, std::move(args), Sort::real());
      }

      case F::arith_int_binary:
      {
        auto args = build_args(items);
        for (std::size_t i = 0; i < args.size(); ++i)
        {
          require(name, args[i], i + 1, args[i].sort.is_int(), "Int");
        }
        return make_app(name, std::move(args), Sort::integer());
      }

      case F::arith_compare:
      {
        auto args = build_args(items);
        numeric_result(name, args);
        return make_app(name, std::move(args), Sort::boolean());
      }

      case F::to_real:
      case F::to_int:
      case F::is_int:
      {
        auto args = build_args(items);
        bool from_int = op.family == F::to_real;
        require(name, args[0], 1, from_int ? args[0].sort.is_int() : args[0].sort.is_real(),
                from_int ? "Int" : "Real");
        Sort result = op.family == F::to_real  ? Sort::real()
                      : op.family == F::to_int ? Sort::integer()
                                               : Sort::boolean();
        return make_app(name, std::move(args), result);
      }

      case F::bv_fold:
      case F::bv_binary:
      case F::bv_unary:
      {
        auto args = build_args(items);
        std::size_t w = bv_uniform(name, args);
        return make_app(name, std::move(args), Sort::bitvec(w));
      }

      case F::bv_compare:
      {
        auto args = build_args(items);
        bv_uniform(name, args);
        return make_app(name, std::move(args), Sort::boolean());
      }

      case F::bv_concat:
      {
        auto args = build_args(items);
        std::size_t total = 0;
        for (std::size_t i = 0; i < args.size(); ++i)
        {
          require(name, args[i], i + 1, args[i].sort.is_bitvec(), "(_ BitVec w)");
          total += args[i].sort.bv_width();
        }
        return make_app(name, std::move(args), Sort::bitvec(total));
      }

      case F::bv_extract:
      {
        auto args = build_args(items);
        require(name, args[0], 1, args[0].sort.is_bitvec(), "(_ BitVec w)");
        auto hi = indices[0].int_value().convert_to<std::size_t>();
        auto lo = indices[1].int_value().convert_to<std::size_t>();
        std::size_t w = args[0].sort.bv_width();
        if (hi < lo || hi >= w)
        {
          throw TermError("extract indices " + std::to_string(hi) + " " + std::to_string(lo)
                          + " out of range for width " + std::to_string(w));
        }
        return make_app(name, std::move(args), Sort::bitvec(hi - lo + 1), indices);
      }

      case F::bv_extend:
      {
        auto args = build_args(items);
        require(name, args[0], 1, args[0].sort.is_bitvec(), "(_ BitVec w)");
        std::size_t w = args[0].sort.bv_width() + indices[0].int_value().convert_to<std::size_t>();
        return make_app(name, std::move(args), Sort::bitvec(w), indices);
      }

      case F::seq_unit:
      {
        const Sort* elem = expected != nullptr && expected->is_seq() ? &expected->args()[0] : nullptr;
        TypedTerm a = build(items[1], elem);
        if (elem != nullptr && !(a.sort == *elem))
        {
          if (auto c = coerce_literal(a, *elem)) a = std::move(*c);
        }
        Sort result = Sort::seq(a.sort);
        std::vector<TypedTerm> args;
        args.push_back(std::move(a));
        return make_app(name, std::move(args), result);
      }

      case F::seq_concat:
      {
        auto args = build_uniform_args(items, 1, expected);
        unify(name, args, 1);
        require(name, args[0], 1, is_sequence(args[0].sort), "String or (Seq T)");
        Sort result = args[0].sort;
        return make_app(seq_name(result, "str.++", "seq.++"), std::move(args), result);
      }

      case F::seq_len:
      {
        auto args = build_args(items);
        require(name, args[0], 1, is_sequence(args[0].sort), "String or (Seq T)");
        std::string emitted = seq_name(args[0].sort, "str.len", "seq.len");
        return make_app(emitted, std::move(args), Sort::integer());
      }

      case F::seq_at:
      {
        auto args = build_args(items);
        require(name, args[0], 1, is_sequence(args[0].sort), "String or (Seq T)");
        require(name, args[1], 2, args[1].sort.is_int(), "Int");
        Sort result = args[0].sort;
        return make_app(seq_name(result, "str.at", "seq.at"), std::move(args), result);
      }

      case F::seq_empty: return seq_empty(expected);

      case F::seq_contains:
      {
        auto args = build_uniform_args(items, 1, nullptr);
        unify(name, args, 1);
        require(name, args[0], 1, is_sequence(args[0].sort), "String or (Seq T)");
        std::string emitted = seq_name(args[0].sort, "str.contains", "seq.contains");
        return make_app(emitted, std::move(args), Sort::boolean());
      }

      case F::str_to_re:
      {
        auto args = build_args(items);
        require(name, args[0], 1, args[0].sort.is_string(), "String");
        return make_app(name, std::move(args), Sort::builtin("RegLan"));
      }

      case F::str_in_re:
      {
        auto args = build_args(items);
        require(name, args[0], 1, args[0].sort.is_string(), "String");
        require(name, args[1], 2, args[1].sort.is_reglan(), "RegLan");
        return make_app(name, std::move(args), Sort::boolean());
      }

      case F::re_star:
      case F::re_fold:
      {
        auto args = build_args(items);
        for (std::size_t i = 0; i < args.size(); ++i)
        {
          require(name, args[i], i + 1, args[i].sort.is_reglan(), "RegLan");
        }
        return make_app(name, std::move(args), Sort::builtin("RegLan"));
      }

      case F::array_select:
      case F::array_store:
      {
        TypedTerm arr = build(items[1], expected != nullptr && op.family == F::array_store ? expected : nullptr);
        require(name, arr, 1, arr.sort.is_array(), "(Array I E)");
        const Sort index_sort = arr.sort.args()[0];
        const Sort elem_sort = arr.sort.args()[1];
        std::vector<TypedTerm> args;
        Sort result = op.family == F::array_select ? elem_sort : arr.sort;
        args.push_back(std::move(arr));
        std::vector<Sort> rest{index_sort};
        if (op.family == F::array_store) rest.push_back(elem_sort);
        for (std::size_t i = 0; i < rest.size(); ++i)
        {
          TypedTerm a = build(items[i + 2], &rest[i]);
          if (!(a.sort == rest[i]))
          {
            auto c = coerce_literal(a, rest[i]);
            if (!c) mismatch(name, i + 2, describe(rest[i]), a.sort);
            a = std::move(*c);
          }
          args.push_back(std::move(a));
        }
        return make_app(name, std::move(args), result);
      }

      case F::quantifier: return build_quantifier(op, form);
    }
    throw UnknownOperator(name);
  }

  const EnvStack& d_env;
  const SortRegistry& d_registry;
  BoundScope& d_bound;
};

void append_utf8_escape(std::string& out, std::uint32_t cp)
{
  char buf[16];
  std::snprintf(buf, sizeof buf, "\\u{%x}", cp);
  out += buf;
}

}  // namespace

/* -------------------------------------------------------------------------- */

const Sort*
BoundScope::find(std::string_view name) const
{
  for (auto frame = d_frames.rbegin(); frame != d_frames.rend(); ++frame)
  {
    for (auto it = frame->rbegin(); it != frame->rend(); ++it)
    {
      if (it->first == name) return &it->second;
    }
  }
  return nullptr;
}

const std::vector<OperatorEntry>&
operator_table()
{
  static const std::vector<OperatorEntry> table = make_table();
  return table;
}

const OperatorEntry&
operator_lookup(std::string_view name)
{
  if (const OperatorEntry* e = find_operator(name)) return *e;
  throw UnknownOperator(std::string(name));
}

std::string
operator_document()
{
  std::ostringstream os;
  os << "# Operators accepted by the term builder\n"
     << "#\n"
     << "# Names are matched case-insensitively; aliases resolve to the canonical\n"
     << "# entry. N stands for Int or Real: mixed arguments promote Int to Real.\n"
     << "# Sequence operators emit the str.* spelling at String and seq.* otherwise.\n"
     << "#\n"
     << "# name | aliases | arity | signature\n\n";
  for (const OperatorEntry& e : operator_table())
  {
    os << e.name << " | ";
    for (std::size_t i = 0; i < e.aliases.size(); ++i)
    {
      os << (i > 0 ? ", " : "") << e.aliases[i];
    }
    if (e.aliases.empty()) os << "-";
    os << " | ";
    if (e.max_args && *e.max_args == e.min_args)
    {
      os << e.min_args;
    }
    else if (e.max_args)
    {
      os << e.min_args << ".." << *e.max_args;
    }
    else
    {
      os << e.min_args << "+";
    }
    os << " | " << e.signature << "\n";
  }
  return os.str();
}

TypedTerm
build(const SExpr& form, const EnvStack& env, const SortRegistry& registry, const Sort* expected)
{
  BoundScope bound;
  return build(form, env, registry, bound, expected);
}

TypedTerm
build(const SExpr& form,
      const EnvStack& env,
      const SortRegistry& registry,
      BoundScope& bound,
      const Sort* expected)
{
  Builder builder(env, registry, bound);
  try
  {
    return builder.build(form, expected);
  }
  catch (const NeedsSortContext& e)
  {
    throw TermError(e.what());
  }
}

SExpr
lower(const TypedTerm& term)
{
  switch (term.kind)
  {
    case TypedTerm::Kind::variable: return SExpr::symbol(term.head);
    case TypedTerm::Kind::literal: return term.literal;
    case TypedTerm::Kind::application:
    {
      SExpr head = SExpr::symbol(term.head);
      if (!term.indices.empty())
      {
        std::vector<SExpr> idx{sym("_"), head};
        idx.insert(idx.end(), term.indices.begin(), term.indices.end());
        head = SExpr::list(std::move(idx));
      }
      if (term.children.empty() && term.indices.empty()) return head;
      std::vector<SExpr> items{std::move(head)};
      for (const TypedTerm& c : term.children) items.push_back(lower(c));
      return SExpr::list(std::move(items));
    }
    case TypedTerm::Kind::binder:
    {
      std::vector<SExpr> vars;
      for (const auto& [n, s] : term.bound)
      {
        vars.push_back(SExpr::list({SExpr::symbol(n), emit_sort(s)}));
      }
      return SExpr::list({sym(term.head), SExpr::list(std::move(vars)),
                          lower(term.children.at(0))});
    }
  }
  return SExpr::list();
}

SExpr
encode_string_literal(std::string_view utf8)
{
  std::string out;
  std::size_t i = 0;
  while (i < utf8.size())
  {
    auto b = static_cast<unsigned char>(utf8[i]);
    std::uint32_t cp = b;
    std::size_t len = 1;
    if (b >= 0xF0 && i + 3 < utf8.size() + 0 && (b & 0xF8) == 0xF0)
    {
      len = 4;
      cp = b & 0x07;
    }
    else if ((b & 0xF0) == 0xE0)
    {
      len = 3;
      cp = b & 0x0F;
    }
    else if ((b & 0xE0) == 0xC0)
    {
      len = 2;
      cp = b & 0x1F;
    }
    bool valid = len == 1 || i + len <= utf8.size();
    for (std::size_t k = 1; valid && k < len; ++k)
    {
      auto cont = static_cast<unsigned char>(utf8[i + k]);
      if ((cont & 0xC0) != 0x80)
      {
        valid = false;
        break;
      }
      cp = (cp << 6) | (cont & 0x3F);
    }
    if (!valid)
    {
      cp = b;
      len = 1;
    }
    if (cp >= 0x20 && cp < 0x7F)
    {
      out.push_back(static_cast<char>(cp));
    }
    else
    {
      append_utf8_escape(out, cp);
    }
    i += len;
  }
  return SExpr::string(std::move(out));
}

}  // namespace smtkit
