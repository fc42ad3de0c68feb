#include <iostream>

#include "jetlie/cli.hpp"

int main(int argc, char** argv) {
  jetlie::CliOutput result = jetlie::run_cli(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
