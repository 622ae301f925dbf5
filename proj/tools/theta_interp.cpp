#include <iostream>

#include "thetaint/cli.hpp"

int main(int argc, char** argv) { return thetaint::run_cli(argc, argv, std::cout, std::cerr); }
