#include "cli_core.hpp"

int main(int argc, char** argv) {
    return mlt::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
