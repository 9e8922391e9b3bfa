#include <iostream>

#include "growthlab/cli.hpp"

int main(int argc, char** argv) { return growthlab::cli::run(argc, argv, std::cout, std::cerr); }
