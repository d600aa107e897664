#include <iostream>

#include "spreadlab/cli.hpp"

int main(int argc, char** argv) {
  return spreadlab::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
