#include <iostream>

#include "xi_ineq/cli.hpp"

int main(int argc, char** argv) { return xi_ineq::run_cli(argc, argv, std::cout, std::cerr); }
