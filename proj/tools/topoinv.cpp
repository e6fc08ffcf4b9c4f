#include <iostream>

#include "topoinv/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return topoinv::run_cli(args, std::cout, std::cerr);
}
