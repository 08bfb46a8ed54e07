#include <iostream>

#include "mhauv/cli.hpp"

int main(int argc, char** argv) { return mhauv::cli::run(argc, argv, std::cout, std::cerr); }
