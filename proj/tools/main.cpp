#include <iostream>

#include "ridgeforge/cli.hpp"

int main(int argc, char** argv) {
    return ridgeforge::run_cli(argc, argv, std::cout, std::cerr);
}
