#include <iostream>
#include <string>
#include <vector>

#include "longtail/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return longtail::cli::run(args, std::cout, std::cerr);
}
