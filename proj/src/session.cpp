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

#include "smtkit/session.hpp"

#include <cstdlib>
#include <iomanip>
#include <mutex>
#include <sstream>

#include "smtkit/errors.hpp"

namespace smtkit {

namespace {

std::vector<std::string> split_words(std::string_view text)
{
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

SExpr keyword(const std::string& name)
{
  return SExpr::symbol(name.empty() || name[0] == ':' ? name : ":" + name);
}

const char* const k_startup_options[][2] = {
    {":print-success", "true"},
    {":produce-models", "true"},
    {":global-declarations", "false"},
};

/* Exact value of a numeral form, or nullopt. */
std::optional<BigRational> numeral(const SExpr& f)
{
  if (f.is_int()) return BigRational(f.int_value());
  if (f.is_decimal()) return f.as_decimal().value();
  if (f.is_rational()) return BigRational(f.as_rational().numerator, f.as_rational().denominator);
  if (f.head_is("-") && f.size() == 2)
  {
    if (auto v = numeral(f[1])) return -*v;
  }
  if (f.head_is("/") && f.size() == 3)
  {
    auto p = numeral(f[1]);
    auto q = numeral(f[2]);
    if (p && q && *q != 0) return *p / *q;
  }
  return std::nullopt;
}

bool mentions_infinity(const SExpr& f)
{
  if (f.is_symbol()) return f.symbol_name() == "oo" || f.symbol_name() == "infinity";
  if (!f.is_list()) return false;
  for (const SExpr& c : f.items())
  {
    if (mentions_infinity(c)) return true;
  }
  return false;
}

SExpr weight_literal(const BigRational& w)
{
  if (denominator(w) == 1) return SExpr::integer(numerator(w));
  std::ostringstream os;
  os << std::fixed << std::setprecision(12) << static_cast<double>(w);
  return SExpr::decimal(os.str());
}

Statistic make_statistic(std::string name, const SExpr& value)
{
  if (!name.empty() && name[0] == ':') name.erase(0, 1);
  if (value.is_int() || value.is_decimal())
  {
    return {std::move(name), static_cast<double>(*numeral(value))};
  }
  if (value.is_string()) return {std::move(name), value.string_value()};
  return {std::move(name), print(value)};
}

}  // namespace

std::vector<std::string>
resolve_solver_command(const SessionConfig& config)
{
  if (!config.command.empty()) return config.command;
  if (auto words = split_words(config.solver_flag); !words.empty()) return words;
  if (const char* env = std::getenv("SMT_SOLVER_PATH"))
  {
    if (auto words = split_words(env); !words.empty()) return words;
  }
  return {"z3", "-in"};
}

std::string
to_string(const CheckResult& r)
{
  switch (r.status)
  {
    case CheckResult::Status::sat: return "sat";
    case CheckResult::Status::unsat: return "unsat";
    case CheckResult::Status::unknown:
      return r.reason.empty() ? "unknown" : "unknown (" + r.reason + ")";
  }
  return "unknown";
}

Session::Session(SessionConfig config)
    : d_config(std::move(config)), d_command(resolve_solver_command(d_config))
{
  if (d_config.timeout.count() <= 0) throw SessionError("response timeout must be positive");
  d_process = std::make_unique<Process>(d_command);

  std::vector<std::pair<std::string, std::string>> options;
  for (const auto& o : k_startup_options) options.emplace_back(o[0], o[1]);
  options.insert(options.end(), d_config.options.begin(), d_config.options.end());
  for (const auto& [key, value] : options)
  {
    SExpr cmd = SExpr::list({sym("set-option"), keyword(key), parse_one(value)});
    try
    {
      expect_success(cmd);
    }
    catch (const ResponseTimeout&)
    {
      close();
      throw StartupTimeout("solver did not acknowledge " + print(cmd));
    }
    catch (const SolverError& e)
    {
      close();
      throw SolverRejectedOption(key, e.what());
    }
    catch (const SessionClosed&)
    {
      throw SolverNotFound("solver " + d_command[0] + " exited during startup");
    }
  }
}

Session::~Session()
{
  close();
}

void
Session::ensure_open() const
{
  if (!d_process) throw SessionClosed();
}

SExpr
Session::exchange(const SExpr& cmd, std::chrono::milliseconds timeout)
{
  ensure_open();
  try
  {
    d_process->write(print(cmd) + "\n");
    ProcessSource source(*d_process, Process::Clock::now() + timeout);
    Reader reader(source);
    std::optional<SExpr> response = reader.next();
    if (!response) throw StreamClosed("solver closed its output");
    if (response->head_is("error"))
    {
      std::string msg = response->size() > 1 && (*response)[1].is_string()
                            ? (*response)[1].string_value()
                            : print(*response);
      throw SolverError(msg);
    }
    return *response;
  }
  catch (const ResponseTimeout&)
  {
    // The pending response would desynchronize every later exchange.
    d_process->terminate(std::chrono::milliseconds(0));
    d_process.reset();
    throw;
  }
  catch (const StreamClosed&)
  {
    d_process->terminate(std::chrono::milliseconds(0));
    d_process.reset();
    throw SessionClosed();
  }
}

void
Session::expect_success(const SExpr& cmd)
{
  SExpr r = exchange(cmd);
  if (!r.is_symbol("success"))
  {
    throw SolverError("unexpected response to " + print(cmd) + ": " + print(r));
  }
}

void
Session::send_declarations(const std::vector<SExpr>& commands)
{
  for (const SExpr& c : commands) expect_success(c);
}

void
Session::declare(const SExpr& specifiers)
{
  ensure_open();
  EnvStack scratch = d_env;
  std::vector<SExpr> cmds = scratch.merge_inline_specifiers(specifiers, d_registry);
  send_declarations(cmds);
  d_env = std::move(scratch);
  invalidate();
}

TypedTerm
Session::build_term(const SExpr& form) const
{
  return build(form, d_env, d_registry);
}

void
Session::send_assertion(SExpr assertion)
{
  SExpr cmd = SExpr::list({sym("assert"), std::move(assertion)});
  invalidate();
  expect_success(cmd);
  d_env.record(std::move(cmd));
}

void
Session::assert_term(std::string_view specifiers, std::string_view form)
{
  assert_term_dynamic(parse_one(form), parse_one(specifiers));
}

void
Session::assert_term(std::string_view form)
{
  assert_term_dynamic(parse_one(form));
}

void
Session::assert_term_dynamic(const SExpr& form, const SExpr& specifiers)
{
  ensure_open();
  EnvStack scratch = d_env;
  std::vector<SExpr> decls = scratch.merge_inline_specifiers(specifiers, d_registry);
  Sort boolean = Sort::boolean();
  TypedTerm term = build(form, scratch, d_registry, &boolean);
  if (!term.sort.is_bool()) throw SortMismatch("assert", 1, "Bool", term.sort.to_string());

  send_declarations(decls);
  d_env = std::move(scratch);
  send_assertion(lower(term));
}

void
Session::assert_unchecked(const SExpr& form, const SExpr& specifiers)
{
  ensure_open();
  EnvStack scratch = d_env;
  std::vector<SExpr> decls = scratch.merge_inline_specifiers(specifiers, d_registry);
  send_declarations(decls);
  d_env = std::move(scratch);
  send_assertion(form);
}

void
Session::flush_sorts()
{
  for (SExpr& cmd : d_registry.take_pending())
  {
    expect_success(cmd);
    d_env.record(std::move(cmd));
  }
}

SExpr
Session::register_enum_sort(std::string_view name, const std::vector<SExpr>& members)
{
  ensure_open();
  SortRegistry before = d_registry;
  SExpr cmd = d_registry.register_enum_sort(name, members);
  try
  {
    flush_sorts();
  }
  catch (const SolverError&)
  {
    d_registry = std::move(before);
    throw;
  }
  invalidate();
  return cmd;
}

SExpr
Session::register_tuple_sort(std::string_view name,
                             const std::vector<std::pair<std::string, SExpr>>& fields)
{
  ensure_open();
  SortRegistry before = d_registry;
  SExpr cmd = d_registry.register_tuple_sort(name, fields);
  try
  {
    flush_sorts();
  }
  catch (const SolverError&)
  {
    d_registry = std::move(before);
    throw;
  }
  invalidate();
  return cmd;
}

void
Session::push()
{
  expect_success(SExpr::list({sym("push"), SExpr::integer(1)}));
  d_env.push_level();
  d_saved_registries.push_back(d_registry);
  invalidate();
}

void
Session::pop()
{
  ensure_open();
  if (d_env.depth() <= 1) throw PopOnBaseLevel();
  expect_success(SExpr::list({sym("pop"), SExpr::integer(1)}));
  d_env.pop_level();
  d_registry = std::move(d_saved_registries.back());
  d_saved_registries.pop_back();
  invalidate();
}

CheckResult
Session::check_sat()
{
  invalidate();
  SExpr r = exchange(SExpr::list({sym("check-sat")}));
  d_checked = true;
  CheckResult result;
  if (r.is_symbol("sat"))
  {
    result.status = CheckResult::Status::sat;
  }
  else if (r.is_symbol("unsat"))
  {
    result.status = CheckResult::Status::unsat;
  }
  else if (r.is_symbol("unknown"))
  {
    result.status = CheckResult::Status::unknown;
    try
    {
      SExpr info = exchange(SExpr::list({sym("get-info"), sym(":reason-unknown")}));
      const SExpr& v = info.is_list() && info.size() == 2 ? info[1] : info;
      result.reason = v.is_string() ? v.string_value() : print(v);
    }
    catch (const SolverError&)
    {
    }
  }
  else
  {
    throw SolverError("unexpected check-sat response: " + print(r));
  }
  d_last = result;
  return result;
}

void
Session::require_model() const
{
  ensure_open();
  if (!d_last || !d_last->is_sat()) throw NoModelAvailable();
}

SExpr
Session::get_model()
{
  require_model();
  return exchange(SExpr::list({sym("get-model")}));
}

Model
Session::model()
{
  return decode_model(get_model(), d_registry, d_env);
}

std::vector<std::pair<std::string, HostValue>>
Session::assignment()
{
  return model_as_assignment(model(), d_env);
}

std::vector<std::pair<SExpr, SExpr>>
Session::get_value(const std::vector<SExpr>& forms)
{
  require_model();
  if (forms.empty()) return {};
  std::vector<SExpr> lowered;
  for (const SExpr& f : forms) lowered.push_back(lower(build_term(f)));
  SExpr r = exchange(SExpr::list({sym("get-value"), SExpr::list(lowered)}));
  if (!r.is_list() || r.size() != forms.size())
  {
    throw SolverError("unexpected get-value response: " + print(r));
  }
  std::vector<std::pair<SExpr, SExpr>> out;
  for (std::size_t i = 0; i < forms.size(); ++i)
  {
    const SExpr& pair = r[i];
    if (!pair.is_list() || pair.size() != 2)
    {
      throw SolverError("unexpected get-value entry: " + print(pair));
    }
    out.emplace_back(forms[i], pair[1]);
  }
  return out;
}

HostValue
Session::eval(const SExpr& form)
{
  require_model();
  TypedTerm term = build_term(form);
  SExpr r = exchange(SExpr::list({sym("get-value"), SExpr::list({lower(term)})}));
  if (!r.is_list() || r.size() != 1 || r[0].size() != 2)
  {
    throw SolverError("unexpected get-value response: " + print(r));
  }
  return decode_value(r[0][1], term.sort, d_registry);
}

void
Session::maximize(const SExpr& form)
{
  ensure_open();
  SExpr t = lower(build_term(form));
  invalidate();
  expect_success(SExpr::list({sym("maximize"), t}));
}

void
Session::minimize(const SExpr& form)
{
  ensure_open();
  SExpr t = lower(build_term(form));
  invalidate();
  expect_success(SExpr::list({sym("minimize"), t}));
}

void
Session::assert_soft(const SExpr& form, const BigRational& weight)
{
  ensure_open();
  if (weight <= 0) throw Error("soft constraint weight must be positive");
  Sort boolean = Sort::boolean();
  TypedTerm term = build(form, d_env, d_registry, &boolean);
  if (!term.sort.is_bool()) throw SortMismatch("assert-soft", 1, "Bool", term.sort.to_string());
  invalidate();
  expect_success(
      SExpr::list({sym("assert-soft"), lower(term), sym(":weight"), weight_literal(weight)}));
}

std::vector<Objective>
Session::get_objectives()
{
  SExpr r = exchange(SExpr::list({sym("get-objectives")}));
  if (!r.head_is("objectives")) throw SolverError("unexpected get-objectives response: " + print(r));
  std::vector<Objective> out;
  for (std::size_t i = 1; i < r.size(); ++i)
  {
    const SExpr& entry = r[i];
    if (!entry.is_list() || entry.size() != 2) continue;
    Objective o{entry[0], entry[1], numeral(entry[1]), mentions_infinity(entry[1])};
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<Statistic>
Session::get_statistics()
{
  ensure_open();
  if (!d_checked) return {};
  SExpr r = exchange(SExpr::list({sym("get-info"), sym(":all-statistics")}));
  std::vector<Statistic> out;
  if (!r.is_list()) return out;
  const auto& items = r.items();
  // cvc5: (:all-statistics ((name value) ...))
  if (items.size() == 2 && items[0].is_symbol(":all-statistics") && items[1].is_list())
  {
    for (const SExpr& e : items[1].items())
    {
      if (!e.is_list() || e.size() < 2) continue;
      std::string name = e[0].is_string() ? e[0].string_value() : print(e[0]);
      if (e.size() == 2)
      {
        out.push_back(make_statistic(std::move(name), e[1]));
      }
      else
      {
        std::vector<SExpr> rest(e.items().begin() + 1, e.items().end());
        out.push_back(make_statistic(std::move(name), SExpr::list(std::move(rest))));
      }
    }
    return out;
  }
  // Z3: (:name value :name value ...)
  for (std::size_t i = 0; i + 1 < items.size(); i += 2)
  {
    if (!items[i].is_keyword()) break;
    out.push_back(make_statistic(items[i].symbol_name(), items[i + 1]));
  }
  return out;
}

void
Session::set_option(std::string_view key, std::string_view value)
{
  SExpr cmd = SExpr::list({sym("set-option"), keyword(std::string(key)), parse_one(value)});
  try
  {
    expect_success(cmd);
  }
  catch (const SolverError& e)
  {
    throw SolverRejectedOption(std::string(key), e.what());
  }
}

SExpr
Session::command(const SExpr& cmd)
{
  invalidate();
  return exchange(cmd);
}

void
Session::close()
{
  if (!d_process) return;
  try
  {
    d_process->write("(exit)\n");
    ProcessSource source(*d_process,
                         Process::Clock::now() + std::chrono::milliseconds(1000));
    Reader reader(source);
    reader.next();
  }
  catch (const std::exception&)
  {
    // Best effort; the process is killed below either way.
  }
  d_process->terminate(std::chrono::milliseconds(1000));
  d_process.reset();
  d_last.reset();
}

namespace {

std::mutex g_default_mutex;
std::unique_ptr<Session> g_default;

}  // namespace

Session&
default_session()
{
  std::lock_guard<std::mutex> lock(g_default_mutex);
  if (!g_default || !g_default->is_open()) g_default = std::make_unique<Session>();
  return *g_default;
}

void
reset_default_session()
{
  std::lock_guard<std::mutex> lock(g_default_mutex);
  g_default.reset();
}

}  // namespace smtkit
