#include <iostream>

#include "dmgrad/cli.hpp"

int main(int argc, char** argv) {
  return dmgrad::cli::run(argc, argv, std::cout, std::cerr);
}
