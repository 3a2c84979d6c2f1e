#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return pse::cli::run_app(argc, argv, std::cout, std::cerr); }
