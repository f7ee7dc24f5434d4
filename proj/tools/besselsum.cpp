#include <iostream>

#include "besselsum/cli.hpp"

int main(int argc, char** argv) { return besselsum::cli::main_entry(argc, argv, std::cout, std::cerr); }
