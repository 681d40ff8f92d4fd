#include "cashctl/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return cashctl::run(argc, argv, std::cout, std::cerr);
}
