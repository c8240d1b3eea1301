#include <iostream>

#include "steerkit/cli.hpp"

int main(int argc, char** argv) { return steerkit::cli::run(argc, argv, std::cout, std::cerr); }
