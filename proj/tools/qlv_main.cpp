#include <iostream>
#include <string>
#include <vector>

#include "qlv/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return qlv::run_cli(args, std::cout, std::cerr);
}
