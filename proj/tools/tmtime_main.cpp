#include <iostream>

#include "tmtime/cli.hpp"

int main(int argc, char** argv) { return tmtime::run_cli(argc, argv, std::cout, std::cerr); }
