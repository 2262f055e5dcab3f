#include <iostream>
#include <string>
#include <vector>

#include "exdom/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return exdom::cli::run(args, std::cout, std::cerr);
}
