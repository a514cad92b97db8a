#include <iostream>
#include <string>
#include <vector>

#include "pdim/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return pdim::cli::run(args, std::cout, std::cerr);
}
