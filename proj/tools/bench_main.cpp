#include <iostream>

#include "bench_cli.hpp"

int main(int argc, char** argv) { return ldp::cli::cli_main(argc, argv, std::cout, std::cerr); }
