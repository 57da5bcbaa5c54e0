#include <iostream>

#include "tdsharp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tdsharp::run_cli(args, std::cout, std::cerr);
}
