#include <vector>

#include "qdsp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qdsp::run_cli(args);
}
