#include <iostream>

#include "skyplanner/cli.hpp"

int main(int argc, char** argv) {
    return skyplanner::cli::parse_and_dispatch(argc, argv, std::cout, std::cerr);
}
