#include <iostream>
#include <string>
#include <vector>

#include "iotrisk/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return iotrisk::cli::run(args, std::cout, std::cerr);
}
