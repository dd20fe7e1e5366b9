#include <iostream>

#include "sks_cli/cli.hpp"

int main(int argc, char** argv) { return sks::cli::run_cli(argc, argv, std::cout, std::cerr); }
