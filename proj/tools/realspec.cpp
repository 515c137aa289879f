#include <iostream>
#include <string>
#include <vector>

#include "realspec/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return realspec::run_command(args, std::cout, std::cerr);
}
