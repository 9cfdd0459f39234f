#include <iostream>

#include "tricount/cli.hpp"

int main(int argc, char** argv) {
  return tricount::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
