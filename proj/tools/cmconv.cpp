#include <iostream>
#include <string>
#include <vector>

#include "cmconv/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cmconv::cli::run(args, std::cout, std::cerr);
}
