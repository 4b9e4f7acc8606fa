#include "orbrr_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return orbrr::cli::run(args, std::cout, std::cerr);
}
