#include <iostream>

#include "nashatom/cli.hpp"

int main(int argc, char** argv) {
    return nashatom::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
