#include <iostream>

#include "idepca/cli.hpp"

int main(int argc, char** argv) { return idepca::cli::run(argc, argv, std::cout, std::cerr); }
