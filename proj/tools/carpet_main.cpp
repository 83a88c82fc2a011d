#include <iostream>

#include "carpet/cli.hpp"

int main(int argc, char** argv) {
  return carpet::run_cli(argc, argv, std::cout, std::cerr);
}
