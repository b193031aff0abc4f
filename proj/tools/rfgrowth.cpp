#include <iostream>

#include "rfgrowth/cli.hpp"

int main(int argc, char** argv) { return rfg::run_cli(argc, argv, std::cout, std::cerr); }
