#include <iostream>

#include "edcp/cli.hpp"

int main(int argc, char** argv) { return edcp::run_cli(argc, argv, std::cout, std::cerr); }
