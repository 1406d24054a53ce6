#include <iostream>
#include <string>
#include <vector>

#include "hirank/cli/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hirank::cli::run(args, std::cout, std::cerr);
}
