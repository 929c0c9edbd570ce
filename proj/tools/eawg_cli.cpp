#include <iostream>

#include "eawg/cli.hpp"

int main(int argc, char **argv) { return eawg::run_cli(argc, argv, std::cout, std::cerr); }
