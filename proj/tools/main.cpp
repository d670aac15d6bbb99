#include "qotto/cli.hpp"

int main(int argc, char** argv) {
    return qotto::cli::run(argc, argv);
}
