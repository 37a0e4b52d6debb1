#include "tumorbif/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return tumorbif::run_cli(argc, argv, std::cout, std::cerr);
}
