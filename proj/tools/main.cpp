#include <iostream>

#include "dirac_lab/cli.hpp"

int main(int argc, char** argv) { return dlab::run(argc, argv, std::cout, std::cerr); }
