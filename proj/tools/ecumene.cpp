#include "ecumene/cli.hpp"

int main(int argc, char** argv) { return ecumene::cli::run(argc, argv); }
