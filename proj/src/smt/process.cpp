/*
 * Copyright 2026 The odelump Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "odelump/smt/process.hpp"

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace odelump::smt {

namespace {

int remaining_ms(SolverProcess::Clock::time_point deadline) {
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - SolverProcess::Clock::now()).count();
  if (left <= 0) return 0;
  return static_cast<int>(std::min<long long>(left, 1000 * 60 * 60));
}

void close_fd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

}  // namespace

SolverProcess::SolverProcess(std::string executable, std::vector<std::string> arguments)
    : executable_(std::move(executable)), arguments_(std::move(arguments)) {}

SolverProcess::~SolverProcess() { kill(); }

void SolverProcess::start() {
  if (running()) return;
  std::signal(SIGPIPE, SIG_IGN);
  int in[2];
  int out[2];
  if (::pipe2(in, O_CLOEXEC) != 0) throw SolverError(std::string("pipe: ") + std::strerror(errno));
  if (::pipe2(out, O_CLOEXEC) != 0) {
    ::close(in[0]);
    ::close(in[1]);
    throw SolverError(std::string("pipe: ") + std::strerror(errno));
  }
  // Reports exec failure back to the parent through a close-on-exec pipe.
  int status[2];
  if (::pipe2(status, O_CLOEXEC) != 0) throw SolverError(std::string("pipe: ") + std::strerror(errno));

  std::vector<char*> argv;
  argv.push_back(executable_.data());
  for (auto& a : arguments_) argv.push_back(a.data());
  argv.push_back(nullptr);

  pid_t pid = ::fork();
  if (pid < 0) throw SolverError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in[0], STDIN_FILENO);
    ::dup2(out[1], STDOUT_FILENO);
    int null = ::open("/dev/null", O_WRONLY);
    if (null >= 0) ::dup2(null, STDERR_FILENO);
    ::close(in[0]);
    ::close(in[1]);
    ::close(out[0]);
    ::close(out[1]);
    ::close(status[0]);
    ::execvp(argv[0], argv.data());
    int err = errno;
    [[maybe_unused]] auto n = ::write(status[1], &err, sizeof err);
    ::_exit(127);
  }
  ::close(in[0]);
  ::close(out[1]);
  ::close(status[1]);
  int err = 0;
  ssize_t got = ::read(status[0], &err, sizeof err);
  ::close(status[0]);
  if (got == static_cast<ssize_t>(sizeof err)) {
    ::close(in[1]);
    ::close(out[0]);
    ::waitpid(pid, nullptr, 0);
    throw SolverError("cannot run solver '" + executable_ + "': " + std::strerror(err));
  }
  pid_ = pid;
  to_child_ = in[1];
  from_child_ = out[0];
  ::fcntl(to_child_, F_SETFL, ::fcntl(to_child_, F_GETFL) | O_NONBLOCK);
  reader_.clear();
}

void SolverProcess::kill() {
  close_fd(to_child_);
  close_fd(from_child_);
  if (pid_ > 0) {
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
  }
  pid_ = -1;
  reader_.clear();
}

/// Reads whatever is available within `timeout_ms`. Returns false on timeout.
bool SolverProcess::pump(int timeout_ms) {
  pollfd p{from_child_, POLLIN, 0};
  int r = ::poll(&p, 1, timeout_ms);
  if (r < 0) {
    if (errno == EINTR) return true;
    throw SolverError(std::string("poll: ") + std::strerror(errno));
  }
  if (r == 0) return false;
  char buf[65536];
  ssize_t n = ::read(from_child_, buf, sizeof buf);
  if (n < 0) {
    if (errno == EINTR || errno == EAGAIN) return true;
    throw SolverError(std::string("read from solver: ") + std::strerror(errno));
  }
  if (n == 0) {
    kill();
    throw SolverError("solver process exited unexpectedly");
  }
  reader_.feed(std::string_view(buf, static_cast<std::size_t>(n)));
  return true;
}

bool SolverProcess::write(std::string_view text, Clock::time_point deadline) {
  if (!running()) throw SolverError("solver process is not running");
  std::size_t done = 0;
  while (done < text.size()) {
    pollfd fds[2] = {{to_child_, POLLOUT, 0}, {from_child_, POLLIN, 0}};
    int r = ::poll(fds, 2, remaining_ms(deadline));
    if (r < 0) {
      if (errno == EINTR) continue;
      throw SolverError(std::string("poll: ") + std::strerror(errno));
    }
    if (r == 0) return false;
    if (fds[1].revents & (POLLIN | POLLHUP)) pump(0);
    if (!running()) throw SolverError("solver process exited unexpectedly");
    if (fds[0].revents & (POLLERR | POLLHUP)) {
      kill();
      throw SolverError("solver closed its input");
    }
    if (fds[0].revents & POLLOUT) {
      ssize_t n = ::write(to_child_, text.data() + done, text.size() - done);
      if (n < 0) {
        if (errno == EAGAIN || errno == EINTR) continue;
        kill();
        throw SolverError(std::string("write to solver: ") + std::strerror(errno));
      }
      done += static_cast<std::size_t>(n);
    }
  }
  return true;
}

std::optional<SExpr> SolverProcess::read(Clock::time_point deadline) {
  if (!running()) throw SolverError("solver process is not running");
  while (true) {
    if (auto e = reader_.next()) return e;
    if (!pump(remaining_ms(deadline))) return std::nullopt;
  }
}

}  // namespace odelump::smt
