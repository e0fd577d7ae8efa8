#include <iostream>
#include <string>
#include <vector>

#include "ncforge/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return ncforge::cli::run(args, std::cout, std::cerr);
}
