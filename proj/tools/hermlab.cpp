#include "hermlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hermlab::run_cli(argc, argv, std::cout, std::cerr); }
