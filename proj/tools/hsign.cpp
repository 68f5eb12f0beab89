#include <iostream>

#include "hsign/cli.hpp"

int main(int argc, char** argv) { return hsign::run_cli(argc, argv, std::cout, std::cerr); }
