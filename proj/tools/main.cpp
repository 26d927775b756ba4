#include <iostream>
#include <string>
#include <vector>

#include "smoothcircle/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return smoothcircle::run(args, std::cout, std::cerr);
}
