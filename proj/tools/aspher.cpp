#include "aspher/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return aspher::run_cli(argc, argv, std::cout, std::cerr); }
