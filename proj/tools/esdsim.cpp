#include <iostream>

#include "esd/cli.hpp"

int main(int argc, char** argv) { return esd::cli::run(argc, argv, std::cout, std::cerr); }
