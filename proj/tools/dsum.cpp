#include <iostream>

#include "dsum/cli.hpp"

int main(int argc, char** argv) { return dsum::cli::dispatch(argc, argv, std::cin, std::cout, std::cerr); }
