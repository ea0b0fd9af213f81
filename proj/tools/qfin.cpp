#include <iostream>

#include "qfinetti/cli.hpp"

int main(int argc, char** argv) { return qfin::run_cli(argc, argv, std::cout, std::cerr); }
