#include <iostream>

#include "gmlcs/cli.hpp"

int main(int argc, char** argv) { return gmlcs::cli::run(argc, argv, std::cout, std::cerr); }
