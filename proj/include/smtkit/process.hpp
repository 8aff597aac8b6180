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

// A child process driven over its standard input and output (POSIX).

#ifndef SMTKIT_PROCESS_HPP
#define SMTKIT_PROCESS_HPP

#include <sys/types.h>

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include "smtkit/sexpr.hpp"

namespace smtkit {

class Process
{
 public:
  using Clock = std::chrono::steady_clock;

  /** Starts argv[0] (searched on PATH). Throws SolverNotFound. Stderr is discarded. */
  explicit Process(const std::vector<std::string>& argv);
  ~Process();

  Process(const Process&) = delete;
  Process& operator=(const Process&) = delete;

  /** Writes all of `data`; throws StreamClosed if the child closed its input. */
  void write(std::string_view data);

  /**
   * Next output byte, or -1 at end of output. Throws ResponseTimeout once
   * `deadline` passes without data.
   */
  int peek(Clock::time_point deadline);
  int get(Clock::time_point deadline);

  void close_input();
  /** Waits up to `grace` for the child to exit, then kills it. */
  void terminate(std::chrono::milliseconds grace);
  bool exited();
  pid_t pid() const { return d_pid; }

 private:
  bool fill(Clock::time_point deadline);

  pid_t d_pid = -1;
  int d_in = -1;
  int d_out = -1;
  bool d_reaped = false;
  std::string d_buf;
  std::size_t d_pos = 0;
  bool d_eof = false;
};

/** CharSource view of a process's output with a fixed deadline. */
class ProcessSource : public CharSource
{
 public:
  ProcessSource(Process& process, Process::Clock::time_point deadline)
      : d_process(process), d_deadline(deadline)
  {
  }
  int peek() override { return d_process.peek(d_deadline); }
  int get() override { return d_process.get(d_deadline); }

 private:
  Process& d_process;
  Process::Clock::time_point d_deadline;
};

}  // namespace smtkit

#endif
