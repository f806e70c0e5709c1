#include "rowpade/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return rowpade::cli::run(argc, argv, std::cout, std::cerr); }
