#include <iostream>

#include "latcor/cli.hpp"

int main(int argc, char** argv) { return latcor::cli::run(argc, argv, std::cout, std::cerr); }
