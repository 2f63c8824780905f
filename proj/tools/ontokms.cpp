#include <iostream>
#include <string>
#include <vector>

#include "ontokms/api/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ontokms::api::run_cli(args, std::cin, std::cout, std::cerr);
}
