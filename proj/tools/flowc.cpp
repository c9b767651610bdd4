#include <iostream>

#include "flowc/cli.hpp"

int main(int argc, char** argv) { return flowc::run_cli(argc, argv, std::cout, std::cerr); }
