#include <iostream>

#include "mcsp/cli.hpp"

int main(int argc, char** argv) { return mcsp::run_cli(argc, argv, std::cout, std::cerr); }
