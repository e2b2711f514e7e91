#include <iostream>

#include "cubesec/cli.hpp"

int main(int argc, char** argv) { return cubesec::cli::run(argc, argv, std::cout, std::cerr); }
