#include <string>
#include <vector>

#include "zll/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return zll::run_cli(args);
}
