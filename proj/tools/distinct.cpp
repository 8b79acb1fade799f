#include <iostream>

#include "distinct/cli.hpp"

int main(int argc, char** argv) { return distinct::cli::run(argc, argv, std::cout, std::cerr); }
