#include <iostream>

#include "courtfilter/cli.hpp"

int main(int argc, char** argv) {
  return courtfilter::run_cli(argc, argv, std::cout, std::cerr);
}
