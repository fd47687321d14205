#include <iostream>
#include <string>
#include <vector>

#include "fostab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fostab::run_cli(args, std::cout, std::cerr);
}
