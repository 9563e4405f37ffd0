#include <iostream>

#include "cocert/commands.hpp"

int main(int argc, char** argv) { return cocert::run_cli(argc, argv, std::cout, std::cerr); }
