#include <iostream>
#include <vector>

#include "folforge/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return folforge::run_command(args, std::cout);
}
