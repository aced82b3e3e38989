#include <iostream>

#include "qbsf/cli.hpp"

int main(int argc, char** argv) { return qbsf::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
