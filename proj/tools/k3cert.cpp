#include <iostream>

#include "k3/cli.hpp"

int main(int argc, char** argv) { return k3::run(argc, argv, std::cout, std::cerr); }
