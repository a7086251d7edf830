#include <iostream>

#include "conint/cli.hpp"

int main(int argc, char** argv) {
  return conint::cli_main({argv + 1, argv + argc}, std::cout, std::cerr);
}
