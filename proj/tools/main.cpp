#include <cstdio>
#include <exception>

#include "dwlab/cli.hpp"

int main(int argc, char** argv) {
    try {
        return dwlab::run(dwlab::parse_config(argc, argv));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
