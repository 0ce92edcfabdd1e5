#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  int code = 0;
  auto cfg = pfiber::cli::parse(argc, argv, std::cout, std::cerr, code);
  if (!cfg) return code;
  return pfiber::cli::run(*cfg, std::cout, std::cerr);
}
