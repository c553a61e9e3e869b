#include <iostream>

#include "hompres_cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hompres::cli::run(args, std::cout, std::cerr);
}
