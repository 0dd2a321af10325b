#include <iostream>

#include "spectral_range/cli.hpp"

int main(int argc, char** argv) { return spectral_range::cli::run(argc, argv, std::cout, std::cerr); }
