#include <iostream>

#include "harmalg/cli.hpp"

int main(int argc, char** argv) {
  return harmalg::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
