#include "reebsweep/cli.h"

#include <iostream>

int main(int argc, char** argv) { return reebsweep::main_cli(argc, argv, std::cout, std::cerr); }
