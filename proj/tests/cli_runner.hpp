#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace qexp_test {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

/// Runs the CLI with `args` (shell syntax), capturing stdout; stderr is discarded.
inline CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(QEXP_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace qexp_test
