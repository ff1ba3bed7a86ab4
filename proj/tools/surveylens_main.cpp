#include <iostream>

#include "surveylens/cli.hpp"

int main(int argc, char** argv) {
  return surveylens::run_cli(argc, argv, std::cout, std::cerr);
}
