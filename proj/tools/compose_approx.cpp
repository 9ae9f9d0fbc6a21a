#include <iostream>

#include "compose_approx/cli.hpp"

int main(int argc, char** argv) { return compose_approx::cli::run(argc, argv, std::cout, std::cerr); }
