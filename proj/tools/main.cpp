#include <iostream>

#include "chaindesign/cli.hpp"

int main(int argc, char** argv) {
  return chaindesign::cli::run(argc, argv, std::cout, std::cerr);
}
