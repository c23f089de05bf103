#include <iostream>

#include "bhd/cli.hpp"

int main(int argc, char** argv) { return bhd::cli::run(argc, argv, std::cout, std::cerr); }
