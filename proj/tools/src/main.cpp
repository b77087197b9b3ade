#include <iostream>

#include "tsppsd_cli/cli.hpp"

int main(int argc, char** argv) { return tsppsd::cli::run(argc, argv, std::cout, std::cerr); }
