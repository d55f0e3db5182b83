#include <string>
#include <vector>

#include "crsense/sweep.hpp"

int main(int argc, char** argv) {
    return crsense::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
