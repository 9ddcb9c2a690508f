#include <iostream>

#include "copoly/cli.hpp"

int main(int argc, char** argv) {
  return copoly::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
