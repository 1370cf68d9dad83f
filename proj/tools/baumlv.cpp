#include <iostream>
#include <vector>

#include "bauml/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bauml::cli::run_cli(args, std::cout, std::cerr);
}
