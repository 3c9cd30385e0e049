#include "cmheight/harness.hpp"

#include <iostream>

int main(int argc, char** argv) { return cmh::cli_dispatch(argc, argv, std::cout, std::cerr); }
