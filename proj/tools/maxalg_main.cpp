#include <iostream>

#include "maxalg/cli.hpp"

int main(int argc, char** argv) {
    return maxalg::cli::run(argc, argv, std::cout, std::cerr);
}
