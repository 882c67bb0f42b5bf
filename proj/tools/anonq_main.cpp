#include "anonq/cli.hpp"

int main(int argc, char** argv) {
    return anonq::cli::run_main(argc, argv);
}
