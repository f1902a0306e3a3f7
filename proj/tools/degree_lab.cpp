#include <iostream>

#include "degree_lab/cli.hpp"

int main(int argc, char** argv) { return degree_lab::run_cli(argc, argv, std::cout, std::cerr); }
