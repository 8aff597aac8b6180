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

// A solver session: one solver process spoken to in SMT-LIB2 over its
// standard streams, with the declaration environment and sort registry kept
// in lockstep with the solver's assertion stack.

#ifndef SMTKIT_SESSION_HPP
#define SMTKIT_SESSION_HPP

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "smtkit/model.hpp"
#include "smtkit/process.hpp"
#include "smtkit/scope_env.hpp"
#include "smtkit/sexpr.hpp"
#include "smtkit/sort.hpp"
#include "smtkit/term.hpp"

namespace smtkit {

struct SessionConfig
{
  /** Solver executable and arguments; empty selects the default chain. */
  std::vector<std::string> command;
  /** Value of a --solver command-line flag, consulted when command is empty. */
  std::string solver_flag;
  /** Extra (set-option :key value) settings; values are SMT-LIB2 text. */
  std::vector<std::pair<std::string, std::string>> options;
  std::chrono::milliseconds timeout{60000};
};

/**
 * The solver command line: config.command, else config.solver_flag, else
 * $SMT_SOLVER_PATH (split on whitespace), else `z3 -in`.
 */
std::vector<std::string> resolve_solver_command(const SessionConfig& config);

struct CheckResult
{
  enum class Status
  {
    sat,
    unsat,
    unknown,
  };
  Status status = Status::unknown;
  /** Solver-reported reason for unknown, when available. */
  std::string reason;

  bool is_sat() const { return status == Status::sat; }
  bool is_unsat() const { return status == Status::unsat; }
  bool is_unknown() const { return status == Status::unknown; }
};

std::string to_string(const CheckResult& r);

struct Statistic
{
  std::string name;
  std::variant<double, std::string> value;
};

struct Objective
{
  SExpr term;
  SExpr raw;
  /** Exact value, when the objective is bounded and the value a numeral. */
  std::optional<BigRational> value;
  /** The solver reported +/- infinity. */
  bool unbounded = false;
};

class Session
{
 public:
  /** Starts the solver and sends the startup options. */
  explicit Session(SessionConfig config = {});
  ~Session();

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  /** Declares `(x :bool y :int ...)` without asserting anything. */
  void declare(const SExpr& specifiers);
  void declare(std::string_view specifiers) { declare(parse_one(specifiers)); }

  /** Builds, sort-checks and asserts `form` after merging `specifiers`. */
  void assert_term(std::string_view specifiers, std::string_view form);
  void assert_term(std::string_view form);
  /** assert_term for a form constructed at run time. */
  void assert_term_dynamic(const SExpr& form, const SExpr& specifiers = SExpr::list());
  /**
   * Sends `(assert form)` as written, without building or sort-checking.
   * Names in `specifiers` are still declared.
   */
  void assert_unchecked(const SExpr& form, const SExpr& specifiers = SExpr::list());

  SExpr register_enum_sort(std::string_view name, const std::vector<SExpr>& members);
  SExpr register_tuple_sort(std::string_view name,
                            const std::vector<std::pair<std::string, SExpr>>& fields);

  void push();
  void pop();
  /** Number of live assertion levels; 1 when nothing is pushed. */
  std::size_t depth() const { return d_env.depth(); }

  CheckResult check_sat();
  const std::optional<CheckResult>& last_result() const { return d_last; }

  /** The raw get-model response. Throws NoModelAvailable unless the last check was SAT. */
  SExpr get_model();
  Model model();
  /** ((X true) (Y 5)) style bindings of declared names. */
  std::vector<std::pair<std::string, HostValue>> assignment();

  /** (form, value) pairs from get-value; forms are sort-checked first. */
  std::vector<std::pair<SExpr, SExpr>> get_value(const std::vector<SExpr>& forms);
  /** Value of `form` in the current model, decoded at its sort. */
  HostValue eval(const SExpr& form);
  HostValue eval(std::string_view form) { return eval(parse_one(form)); }

  void maximize(const SExpr& form);
  void minimize(const SExpr& form);
  void assert_soft(const SExpr& form, const BigRational& weight = 1);
  std::vector<Objective> get_objectives();

  std::vector<Statistic> get_statistics();

  void set_option(std::string_view key, std::string_view value);
  /** Sends any command and returns the solver's response form. */
  SExpr command(const SExpr& cmd);

  /** Sends (exit) and stops the process. Idempotent. */
  void close();
  bool is_open() const { return d_process != nullptr; }

  const EnvStack& env() const { return d_env; }
  const SortRegistry& registry() const { return d_registry; }
  const std::vector<std::string>& solver_command() const { return d_command; }

 private:
  void ensure_open() const;
  SExpr exchange(const SExpr& cmd, std::chrono::milliseconds timeout);
  SExpr exchange(const SExpr& cmd) { return exchange(cmd, d_config.timeout); }
  void expect_success(const SExpr& cmd);
  void send_declarations(const std::vector<SExpr>& commands);
  void flush_sorts();
  TypedTerm build_term(const SExpr& form) const;
  void send_assertion(SExpr assertion);
  void invalidate() { d_last.reset(); }
  void require_model() const;

  SessionConfig d_config;
  std::vector<std::string> d_command;
  std::unique_ptr<Process> d_process;
  EnvStack d_env;
  SortRegistry d_registry;
  /** Registry as it was before each push, restored by the matching pop. */
  std::vector<SortRegistry> d_saved_registries;
  std::optional<CheckResult> d_last;
  bool d_checked = false;
};

/** Process-wide session used when no session is given; opened on first use. */
Session& default_session();
/** Closes and forgets the default session. */
void reset_default_session();

}  // namespace smtkit

#endif
