#include <iostream>

#include "qfunc/cli.hpp"

int main(int argc, char** argv) {
  return qfunc::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
