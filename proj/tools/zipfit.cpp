#include <iostream>

#include "zipfit/cli.hpp"

int main(int argc, char** argv) {
  return zipfit::run_cli(argc, argv, std::cout, std::cerr);
}
