#include <iostream>

#include "arbopack/cli.hpp"

int main(int argc, char** argv) { return arbopack::cli::main(argc, argv, std::cout, std::cerr); }
