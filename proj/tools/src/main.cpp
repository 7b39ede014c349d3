#include <iostream>
#include <string>
#include <vector>

#include "magneto/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return static_cast<int>(magneto::cli::run(args, std::cout, std::cerr, magneto::cli::environment_from_process()));
}
