#include "ces/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return ces::cli::run(argc, argv, std::cout, std::cerr); }
