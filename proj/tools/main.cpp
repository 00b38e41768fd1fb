#include <iostream>

#include "cvsteer/cli/commands.hpp"

int main(int argc, char** argv) { return cvsteer::cli::run(argc, argv, std::cout, std::cerr); }
