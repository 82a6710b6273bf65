#include <iostream>

#include "bgpa/cli.hpp"

int main(int argc, char** argv) { return bgpa::run_cli(argc, argv, std::cout, std::cerr); }
