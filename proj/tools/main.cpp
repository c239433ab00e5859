#include <iostream>

#include "geomom/cli.hpp"

int main(int argc, char** argv) { return geomom::run_cli(argc, argv, std::cout, std::cerr); }
