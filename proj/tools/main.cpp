#include <iostream>

#include "eiscong/cli/app.hpp"

int main(int argc, char** argv) { return eiscong::cli::run(argc, argv, std::cout, std::cerr); }
