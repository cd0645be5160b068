#include <iostream>

#include "cli/cli.hpp"

int main(int argc, char** argv) { return netgeo::cli::run_cli(argc, argv, std::cout, std::cerr); }
