#include <iostream>

#include "gic_region/cli.hpp"

int main(int argc, char** argv) { return gic::run_main(argc, argv, std::cout, std::cerr); }
