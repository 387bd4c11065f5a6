#include <iostream>

#include "qspace/cli.hpp"

int main(int argc, char** argv) { return qspace::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
