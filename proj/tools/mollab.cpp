#include <iostream>

#include "mollab/cli.hpp"

int main(int argc, char** argv) { return mollab::run_cli(argc, argv, std::cout, std::cerr); }
