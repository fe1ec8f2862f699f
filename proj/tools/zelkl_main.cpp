#include <cstdio>
#include <string>
#include <vector>

#include "zelkl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const zelkl::cli::CommandResult result = zelkl::cli::run(args);
  std::fputs(result.payload.c_str(), stdout);
  std::fputc('\n', stdout);
  return result.exit_code;
}
