#include <iostream>

#include "brst/cli.hpp"

int main(int argc, char** argv) { return brst::cli::main(argc, argv, std::cout, std::cerr); }
