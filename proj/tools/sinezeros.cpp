#include <iostream>

#include "sinezeros/cli.hpp"

int main(int argc, char** argv) { return sinezeros::cli::run(argc, argv, std::cout, std::cerr); }
