#include <iostream>

#include "qhopf/cli.hpp"

int main(int argc, char** argv) {
  return qhopf::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
