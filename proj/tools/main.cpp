#include "cavityqc/cli.hpp"

int main(int argc, char** argv) {
    return cavityqc::cli::run(argc, argv);
}
