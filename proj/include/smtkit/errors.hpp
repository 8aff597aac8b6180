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

// Exception hierarchy for smtkit. Every error raised by the library derives
// from smtkit::Error; the intermediate classes group errors by the module that
// raises them so callers can catch at whatever granularity they need.

#ifndef SMTKIT_ERRORS_HPP
#define SMTKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smtkit {

class Error : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

/* -------------------------------------------------------------------------- */
/* S-expressions                                                              */
/* -------------------------------------------------------------------------- */

/** 1-based line/column of a character in parsed text. */
struct SourcePosition
{
  std::size_t line = 1;
  std::size_t column = 1;
};

class SyntaxError : public Error
{
 public:
  SyntaxError(const std::string& msg, SourcePosition pos)
      : Error("syntax error at " + std::to_string(pos.line) + ":"
              + std::to_string(pos.column) + ": " + msg),
        d_pos(pos)
  {
  }
  SourcePosition position() const { return d_pos; }

 private:
  SourcePosition d_pos;
};

/** The character source ended in the middle of a form. */
class StreamClosed : public Error
{
 public:
  using Error::Error;
};

/* -------------------------------------------------------------------------- */
/* Sorts                                                                      */
/* -------------------------------------------------------------------------- */

class SortError : public Error
{
 public:
  using Error::Error;
};

class UnknownSort : public SortError
{
 public:
  explicit UnknownSort(const std::string& name)
      : SortError("unknown sort: " + name)
  {
  }
};

class ArityMismatch : public SortError
{
 public:
  ArityMismatch(const std::string& name, std::size_t expected, std::size_t got)
      : SortError("sort " + name + " expects " + std::to_string(expected)
                  + " argument(s), got " + std::to_string(got))
  {
  }
};

class MalformedSpecifier : public SortError
{
 public:
  using SortError::SortError;
};

class DuplicateSortName : public SortError
{
 public:
  explicit DuplicateSortName(const std::string& name)
      : SortError("sort already registered: " + name)
  {
  }
};

class DuplicateMember : public SortError
{
 public:
  using SortError::SortError;
};

class EmptyEnum : public SortError
{
 public:
  explicit EmptyEnum(const std::string& name)
      : SortError("enumeration sort " + name + " has no members")
  {
  }
};

class DuplicateFieldName : public SortError
{
 public:
  DuplicateFieldName(const std::string& sort, const std::string& field)
      : SortError("tuple sort " + sort + " repeats field " + field)
  {
  }
};

/* -------------------------------------------------------------------------- */
/* Scopes                                                                     */
/* -------------------------------------------------------------------------- */

class ScopeError : public Error
{
 public:
  using Error::Error;
};

class ConflictingDeclaration : public ScopeError
{
 public:
  ConflictingDeclaration(const std::string& name,
                         const std::string& existing,
                         const std::string& attempted)
      : ScopeError("conflicting declaration of " + name + ": already declared as "
                   + existing + ", attempted " + attempted)
  {
  }
};

class MalformedSpecifierList : public ScopeError
{
 public:
  using ScopeError::ScopeError;
};

class UndeclaredName : public ScopeError
{
 public:
  explicit UndeclaredName(const std::string& name)
      : ScopeError("undeclared name: " + name)
  {
  }
};

class PopOnBaseLevel : public ScopeError
{
 public:
  PopOnBaseLevel() : ScopeError("cannot pop the base assertion level") {}
};

/* -------------------------------------------------------------------------- */
/* Terms                                                                      */
/* -------------------------------------------------------------------------- */

class TermError : public Error
{
 public:
  using Error::Error;
};

class UnknownOperator : public TermError
{
 public:
  explicit UnknownOperator(const std::string& name)
      : TermError("unknown operator: " + name)
  {
  }
};

class SortMismatch : public TermError
{
 public:
  SortMismatch(const std::string& op,
               std::size_t position,
               const std::string& expected,
               const std::string& got)
      : TermError("sort mismatch in argument " + std::to_string(position) + " of "
                  + op + ": expected " + expected + ", got " + got)
  {
  }
};

class BadArity : public TermError
{
 public:
  using TermError::TermError;
};

/* -------------------------------------------------------------------------- */
/* Sessions                                                                   */
/* -------------------------------------------------------------------------- */

class SessionError : public Error
{
 public:
  using Error::Error;
};

class SolverNotFound : public SessionError
{
 public:
  using SessionError::SessionError;
};

class SolverRejectedOption : public SessionError
{
 public:
  SolverRejectedOption(const std::string& option, const std::string& message)
      : SessionError("solver rejected option " + option + ": " + message)
  {
  }
};

class StartupTimeout : public SessionError
{
 public:
  using SessionError::SessionError;
};

class ResponseTimeout : public SessionError
{
 public:
  using SessionError::SessionError;
};

/** The solver answered a command with (error "..."). */
class SolverError : public SessionError
{
 public:
  using SessionError::SessionError;
};

class NoModelAvailable : public SessionError
{
 public:
  NoModelAvailable() : SessionError("no model available") {}
};

class SessionClosed : public SessionError
{
 public:
  SessionClosed() : SessionError("session is closed") {}
};

/* -------------------------------------------------------------------------- */
/* Models                                                                     */
/* -------------------------------------------------------------------------- */

class UnsupportedInterpretation : public Error
{
 public:
  UnsupportedInterpretation(const std::string& name, const std::string& form)
      : Error("unsupported interpretation for " + name + ": " + form)
  {
  }
};

/* -------------------------------------------------------------------------- */
/* Demo applications                                                          */
/* -------------------------------------------------------------------------- */

class MalformedGrid : public Error
{
 public:
  using Error::Error;
};

class CatalogError : public Error
{
 public:
  using Error::Error;
};

class LayoutInvariantViolation : public Error
{
 public:
  using Error::Error;
};

}  // namespace smtkit

#endif
