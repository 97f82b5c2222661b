#include <iostream>

#include "thomform/cli.hpp"

int main(int argc, char** argv) { return thomform::dispatch(argc, argv, std::cout, std::cerr); }
