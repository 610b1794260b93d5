#include "asymcheck/cli.hpp"

int main(int argc, char** argv) {
    return asymcheck::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
