#include <iostream>

#include "youngwave/cli.hpp"

int main(int argc, char** argv) { return youngwave::run_cli(argc, argv, std::cout, std::cerr); }
