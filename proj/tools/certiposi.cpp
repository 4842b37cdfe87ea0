#include <iostream>
#include <string>
#include <vector>

#include "certiposi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return certiposi::cli::run(args, std::cout, std::cerr);
}
