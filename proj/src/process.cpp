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

#include "smtkit/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "smtkit/errors.hpp"

extern char** environ;

namespace smtkit {

namespace {

void close_fd(int& fd)
{
  if (fd >= 0) ::close(fd);
  fd = -1;
}

}  // namespace

Process::Process(const std::vector<std::string>& argv)
{
  if (argv.empty()) throw SolverNotFound("empty solver command");

  // Input goes over a socket so writes to a dead child fail with EPIPE
  // (MSG_NOSIGNAL) instead of raising SIGPIPE.
  int in[2];
  int out[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, in) != 0)
  {
    throw SessionError(std::string("socketpair: ") + std::strerror(errno));
  }
  if (::pipe2(out, O_CLOEXEC) != 0)
  {
    ::close(in[0]);
    ::close(in[1]);
    throw SessionError(std::string("pipe: ") + std::strerror(errno));
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in[1], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out[1], STDOUT_FILENO);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, "/dev/null", O_WRONLY, 0);

  std::vector<char*> args;
  for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  int rc = ::posix_spawnp(&d_pid, args[0], &actions, nullptr, args.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(in[1]);
  ::close(out[1]);
  if (rc != 0)
  {
    ::close(in[0]);
    ::close(out[0]);
    throw SolverNotFound("cannot start " + argv[0] + ": " + std::strerror(rc));
  }
  d_in = in[0];
  d_out = out[0];
}

Process::~Process()
{
  try
  {
    terminate(std::chrono::milliseconds(0));
  }
  catch (...)
  {
  }
}

void
Process::write(std::string_view data)
{
  while (!data.empty())
  {
    if (d_in < 0) throw StreamClosed("solver input is closed");
    ssize_t n = ::send(d_in, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0)
    {
      if (errno == EINTR) continue;
      throw StreamClosed(std::string("write to solver failed: ") + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

bool
Process::fill(Clock::time_point deadline)
{
  if (d_pos < d_buf.size()) return true;
  if (d_eof || d_out < 0) return false;
  d_buf.clear();
  d_pos = 0;
  for (;;)
  {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0) throw ResponseTimeout("solver did not respond in time");
    pollfd p{d_out, POLLIN, 0};
    int rc = ::poll(&p, 1, static_cast<int>(std::min<long long>(left.count(), 1 << 30)));
    if (rc < 0)
    {
      if (errno == EINTR) continue;
      throw SessionError(std::string("poll: ") + std::strerror(errno));
    }
    if (rc == 0) continue;
    char chunk[4096];
    ssize_t n = ::read(d_out, chunk, sizeof chunk);
    if (n < 0)
    {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw SessionError(std::string("read: ") + std::strerror(errno));
    }
    if (n == 0)
    {
      d_eof = true;
      return false;
    }
    d_buf.assign(chunk, static_cast<std::size_t>(n));
    return true;
  }
}

int
Process::peek(Clock::time_point deadline)
{
  if (!fill(deadline)) return -1;
  return static_cast<unsigned char>(d_buf[d_pos]);
}

int
Process::get(Clock::time_point deadline)
{
  if (!fill(deadline)) return -1;
  return static_cast<unsigned char>(d_buf[d_pos++]);
}

void
Process::close_input()
{
  close_fd(d_in);
}

bool
Process::exited()
{
  if (d_reaped) return true;
  int status = 0;
  pid_t r = ::waitpid(d_pid, &status, WNOHANG);
  if (r == d_pid || (r < 0 && errno == ECHILD)) d_reaped = true;
  return d_reaped;
}

void
Process::terminate(std::chrono::milliseconds grace)
{
  close_input();
  if (d_pid > 0 && !d_reaped)
  {
    auto until = Clock::now() + grace;
    while (!exited() && Clock::now() < until)
    {
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    if (!exited())
    {
      ::kill(d_pid, SIGKILL);
      int status = 0;
      while (::waitpid(d_pid, &status, 0) < 0 && errno == EINTR)
      {
      }
      d_reaped = true;
    }
  }
  close_fd(d_out);
}

}  // namespace smtkit
