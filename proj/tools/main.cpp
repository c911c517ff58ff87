#include <string>
#include <vector>

#include "priorisk/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return priorisk::run_cli(args);
}
