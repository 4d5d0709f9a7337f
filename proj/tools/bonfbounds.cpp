#include <iostream>
#include <string>
#include <vector>

#include "bonfbounds/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bonfbounds::cli::run(args, std::cout, std::cerr);
}
