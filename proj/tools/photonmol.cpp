#include <iostream>

#include "photonmol/cli.hpp"

int main(int argc, char** argv) { return photonmol::cli_main(argc, argv, std::cout, std::cerr); }
