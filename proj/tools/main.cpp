#include <iostream>

#include "reppact/cli.hpp"

int main(int argc, char** argv) { return reppact::run_cli(argc, argv, std::cout, std::cerr); }
