#include <iostream>

#include "primebias/cli.hpp"

int main(int argc, char** argv) { return primebias::cli::main(argc, argv, std::cout, std::cerr); }
