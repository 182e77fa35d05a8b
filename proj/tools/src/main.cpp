#include <iostream>

#include "carleson/cli/run.hpp"

int main(int argc, char** argv) { return carleson::cli::cli_main(argc, argv, std::cout, std::cerr); }
