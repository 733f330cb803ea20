#include <iostream>

#include "qdisk/cli.hpp"

int main(int argc, char** argv) { return qdisk::run_cli(argc, argv, std::cout, std::cerr); }
