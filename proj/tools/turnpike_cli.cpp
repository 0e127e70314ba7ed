#include "turnpike/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return turnpike::run_cli(argc, argv, std::cout, std::cerr); }
